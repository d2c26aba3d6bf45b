//! Tokenizer for interface files.
//!
//! Handles the C/C++ declaration subset plus the `%` directive syntax.
//! Regular comments are dropped; `///` and `/** */` doc comments are
//! attached to the token that follows them.

use crate::diag::{ids, Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    /// Numeric literal, raw spelling including suffixes.
    Number(String),
    /// String literal, raw spelling including the quotes.
    Str(String),
    /// Character literal, raw spelling including the quotes.
    Char(String),
    Sym(&'static str),
    /// Any other character; only meaningful inside skipped bodies.
    Other(char),
    /// `%name` directive introducer.
    Directive(String),
    /// Body of a `%{ ... %}` block, byte-exact.
    Verbatim(String),
    /// A preprocessor line; text after `#`, continuations joined.
    Hash(String),
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
    pub doc: Option<String>,
    /// True when whitespace or a comment separates this token from the previous one.
    pub spaced: bool,
}

impl Token {
    pub fn is_sym(&self, s: &str) -> bool {
        matches!(&self.kind, TokenKind::Sym(x) if *x == s)
    }

    pub fn is_ident(&self, s: &str) -> bool {
        matches!(&self.kind, TokenKind::Ident(x) if x == s)
    }

    pub fn ident(&self) -> Option<&str> {
        match &self.kind {
            TokenKind::Ident(s) => Some(s),
            _ => None,
        }
    }

    /// Source-like spelling of the token.
    pub fn text(&self) -> String {
        match &self.kind {
            TokenKind::Ident(s) | TokenKind::Number(s) | TokenKind::Str(s) | TokenKind::Char(s) => s.clone(),
            TokenKind::Sym(s) => (*s).to_string(),
            TokenKind::Other(c) => c.to_string(),
            TokenKind::Directive(s) => format!("%{s}"),
            TokenKind::Verbatim(s) => format!("%{{{s}%}}"),
            TokenKind::Hash(s) => format!("#{s}"),
            TokenKind::Eof => String::new(),
        }
    }
}

const SYMS3: &[&str] = &["...", "<<=", ">>="];
const SYMS2: &[&str] =
    &["::", "->", "&&", "||", "==", "!=", "<=", ">=", "++", "--", "+=", "-=", "*=", "/=", "|=", "&=", "^=", "%=", ".*"];
const SYMS1: &[&str] = &[
    "(", ")", "{", "}", "[", "]", "<", ">", ",", ";", "*", "&", "=", ":", "~", "-", "+", ".", "/", "|", "!", "?", "^",
    "%", "#",
];

fn sym_for(s: &str) -> Option<&'static str> {
    SYMS3.iter().chain(SYMS2).chain(SYMS1).find(|x| **x == s).copied()
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
    at_line_start: bool,
    pending_doc: Option<String>,
    spaced: bool,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn peek(&self, n: usize) -> Option<char> {
        self.chars.get(self.pos + n).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
            self.at_line_start = true;
        } else {
            self.col += 1;
            if !c.is_whitespace() {
                self.at_line_start = false;
            }
        }
        Some(c)
    }

    fn span(&self) -> Span {
        Span::new(self.line, self.col)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek(i) == Some(c))
    }

    fn add_doc(&mut self, text: &str) {
        match &mut self.pending_doc {
            Some(d) => {
                d.push('\n');
                d.push_str(text);
            }
            None => self.pending_doc = Some(text.to_string()),
        }
    }

    /// Skip whitespace and comments, collecting doc comments.
    fn skip_trivia(&mut self) -> Result<(), Diagnostic> {
        loop {
            match self.peek(0) {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                    self.spaced = true;
                }
                Some('/') if self.peek(1) == Some('/') => {
                    let is_doc = self.peek(2) == Some('/') && self.peek(3) != Some('/');
                    let mut text = String::new();
                    while let Some(c) = self.peek(0) {
                        if c == '\n' {
                            break;
                        }
                        text.push(c);
                        self.bump();
                    }
                    if is_doc {
                        self.add_doc(text[3..].trim());
                    }
                    self.spaced = true;
                }
                Some('/') if self.peek(1) == Some('*') => {
                    let start = self.span();
                    let is_doc = self.peek(2) == Some('*') && self.peek(3) != Some('/');
                    self.bump();
                    self.bump();
                    let mut text = String::new();
                    loop {
                        if self.starts_with("*/") {
                            self.bump();
                            self.bump();
                            break;
                        }
                        match self.bump() {
                            Some(c) => text.push(c),
                            None => return Err(Diagnostic::error(ids::LEX, start, "unterminated block comment")),
                        }
                    }
                    if is_doc {
                        let body = text.strip_prefix('*').unwrap_or(&text);
                        let cleaned: Vec<&str> = body
                            .lines()
                            .map(|l| l.trim().trim_start_matches('*').trim())
                            .filter(|l| !l.is_empty())
                            .collect();
                        if !cleaned.is_empty() {
                            self.add_doc(&cleaned.join("\n"));
                        }
                    }
                    self.spaced = true;
                }
                _ => return Ok(()),
            }
        }
    }

    fn lex_quoted(&mut self, quote: char) -> Result<String, Diagnostic> {
        let start = self.span();
        let mut text = String::new();
        text.push(self.bump().unwrap_or(quote));
        loop {
            match self.peek(0) {
                None | Some('\n') => {
                    let what = if quote == '"' { "string literal" } else { "character literal" };
                    return Err(Diagnostic::error(ids::LEX, start, format!("unterminated {what}")));
                }
                Some('\\') => {
                    text.push('\\');
                    self.bump();
                    if let Some(c) = self.peek(0) {
                        if c != '\n' {
                            text.push(c);
                            self.bump();
                        }
                    }
                }
                Some(c) => {
                    text.push(c);
                    self.bump();
                    if c == quote {
                        return Ok(text);
                    }
                }
            }
        }
    }

    fn lex_hash_line(&mut self) -> String {
        // consume '#'
        self.bump();
        let mut text = String::new();
        while let Some(c) = self.peek(0) {
            if c == '\\' && self.peek(1) == Some('\n') {
                self.bump();
                self.bump();
                text.push(' ');
                continue;
            }
            if c == '\n' {
                break;
            }
            // Trailing comments on a preprocessor line are not part of its text.
            if self.starts_with("//") {
                while let Some(c) = self.peek(0) {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
                break;
            }
            if self.starts_with("/*") {
                while self.peek(0).is_some() && !self.starts_with("*/") {
                    self.bump();
                }
                self.bump();
                self.bump();
                continue;
            }
            text.push(c);
            self.bump();
        }
        text.trim().to_string()
    }

    fn next_token(&mut self) -> Result<Token, Diagnostic> {
        self.spaced = false;
        self.skip_trivia()?;
        let span = self.span();
        let line_start = self.at_line_start;
        let kind = match self.peek(0) {
            None => TokenKind::Eof,
            Some('%') if self.peek(1) == Some('{') => {
                self.bump();
                self.bump();
                let mut body = String::new();
                loop {
                    if self.starts_with("%}") {
                        self.bump();
                        self.bump();
                        break;
                    }
                    match self.bump() {
                        Some(c) => body.push(c),
                        None => return Err(Diagnostic::error(ids::LEX, span, "unterminated %{ ... %} block")),
                    }
                }
                TokenKind::Verbatim(body)
            }
            Some('%') if self.peek(1).is_some_and(|c| c.is_ascii_alphabetic() || c == '_') => {
                self.bump();
                let mut name = String::new();
                while let Some(c) = self.peek(0).filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    name.push(c);
                    self.bump();
                }
                TokenKind::Directive(name)
            }
            Some('#') if line_start => TokenKind::Hash(self.lex_hash_line()),
            Some('"') => TokenKind::Str(self.lex_quoted('"')?),
            Some('\'') => TokenKind::Char(self.lex_quoted('\'')?),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(c) = self.peek(0).filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    s.push(c);
                    self.bump();
                }
                TokenKind::Ident(s)
            }
            Some(c) if c.is_ascii_digit() || (c == '.' && self.peek(1).is_some_and(|d| d.is_ascii_digit())) => {
                let mut s = String::new();
                while let Some(c) = self.peek(0) {
                    let exp_sign = (c == '+' || c == '-')
                        && matches!(s.chars().last(), Some('e' | 'E' | 'p' | 'P'))
                        && !(s.starts_with("0x") || s.starts_with("0X"));
                    if c.is_ascii_alphanumeric() || c == '.' || c == '\'' || exp_sign {
                        s.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                TokenKind::Number(s)
            }
            Some(c) => {
                let three: String = (0..3).filter_map(|i| self.peek(i)).collect();
                let two: String = three.chars().take(2).collect();
                let one = c.to_string();
                if let Some(sym) = sym_for(&three).filter(|_| three.chars().count() == 3) {
                    (0..3).for_each(|_| {
                        self.bump();
                    });
                    TokenKind::Sym(sym)
                } else if let Some(sym) = sym_for(&two).filter(|_| two.chars().count() == 2) {
                    self.bump();
                    self.bump();
                    TokenKind::Sym(sym)
                } else if let Some(sym) = sym_for(&one) {
                    self.bump();
                    TokenKind::Sym(sym)
                } else {
                    self.bump();
                    TokenKind::Other(c)
                }
            }
        };
        let doc = if matches!(kind, TokenKind::Eof) { None } else { self.pending_doc.take() };
        Ok(Token { kind, span, doc, spaced: self.spaced })
    }
}

/// Tokenize `source`. The returned stream always ends with an `Eof` token.
pub fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    tokenize_at(source, Span::new(1, 1))
}

/// Tokenize text that begins at `origin` in some enclosing file.
pub fn tokenize_at(source: &str, origin: Span) -> Result<Vec<Token>, Diagnostic> {
    let mut lexer = Lexer {
        chars: source.chars().collect(),
        pos: 0,
        line: origin.line,
        col: origin.col,
        at_line_start: origin.col == 1,
        pending_doc: None,
        spaced: false,
        _src: source,
    };
    let mut out = Vec::new();
    loop {
        let tok = lexer.next_token()?;
        let eof = matches!(tok.kind, TokenKind::Eof);
        out.push(tok);
        if eof {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn minimal_declaration() {
        assert_eq!(
            kinds("void f();"),
            vec![
                TokenKind::Ident("void".into()),
                TokenKind::Ident("f".into()),
                TokenKind::Sym("("),
                TokenKind::Sym(")"),
                TokenKind::Sym(";"),
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn template_directive() {
        let k = kinds("%template(do_it_int) do_it<int>;");
        assert_eq!(k[0], TokenKind::Directive("template".into()));
        assert_eq!(k[1], TokenKind::Sym("("));
        assert_eq!(k[2], TokenKind::Ident("do_it_int".into()));
        assert_eq!(k[4], TokenKind::Ident("do_it".into()));
        assert_eq!(k[5], TokenKind::Sym("<"));
        assert_eq!(k[6], TokenKind::Ident("int".into()));
        assert_eq!(k[7], TokenKind::Sym(">"));
    }

    #[test]
    fn unterminated_comment_reports_start() {
        let err = tokenize("int x;\n  /* unterminated").unwrap_err();
        assert_eq!(err.span, Span::new(2, 3));
        assert_eq!(err.id, ids::LEX);
    }

    #[test]
    fn unterminated_string_and_block() {
        assert!(tokenize("\"abc").is_err());
        let err = tokenize("%module m\n%{ int x;").unwrap_err();
        assert_eq!(err.span, Span::new(2, 1));
    }

    #[test]
    fn verbatim_is_byte_exact() {
        let src = "%{\n#include <algorithm>\n  /* keep */ x  %}";
        let k = kinds(src);
        assert_eq!(k[0], TokenKind::Verbatim("\n#include <algorithm>\n  /* keep */ x  ".into()));
    }

    #[test]
    fn doc_comments_attach_to_next_token() {
        let toks = tokenize("// plain\n/// Adds.\n/// Twice.\nint add(); /** Block doc */ void g();").unwrap();
        assert_eq!(toks[0].doc.as_deref(), Some("Adds.\nTwice."));
        let g = toks.iter().position(|t| t.is_ident("void")).unwrap();
        assert_eq!(toks[g].doc.as_deref(), Some("Block doc"));
        assert!(toks[1].doc.is_none());
    }

    #[test]
    fn preprocessor_lines() {
        let k = kinds("#define MAX_ITERS 100 // limit\nint x;");
        assert_eq!(k[0], TokenKind::Hash("define MAX_ITERS 100".into()));
        assert_eq!(k[1], TokenKind::Ident("int".into()));
    }

    #[test]
    fn numbers_and_symbols() {
        let k = kinds("1.5e-3f 0x1F :: -> a>>b");
        assert_eq!(k[0], TokenKind::Number("1.5e-3f".into()));
        assert_eq!(k[1], TokenKind::Number("0x1F".into()));
        assert_eq!(k[2], TokenKind::Sym("::"));
        assert_eq!(k[3], TokenKind::Sym("->"));
        // '>' is never fused so nested template arguments close cleanly
        assert_eq!(k[5], TokenKind::Sym(">"));
        assert_eq!(k[6], TokenKind::Sym(">"));
    }

    #[test]
    fn spans_track_lines_and_columns() {
        let toks = tokenize("a\n  b").unwrap();
        assert_eq!(toks[0].span, Span::new(1, 1));
        assert_eq!(toks[1].span, Span::new(2, 3));
    }
}
