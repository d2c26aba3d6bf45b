//! Interface-file front end: tokenizer, syntax tree and a hand-written
//! recursive-descent parser over the supported declaration subset.
//!
//! The parser runs in collect-all-errors mode. A grammar violation records a
//! diagnostic and resynchronizes at the next `;` or `}` so that later items
//! are still checked.

pub mod ast;
pub mod lexer;

use crate::diag::{has_errors, ids, Diagnostic, Span};
use ast::*;
use lexer::{Token, TokenKind};

pub use lexer::{tokenize, tokenize_at};

/// Result of parsing: a unit when no errors occurred, plus all diagnostics.
#[derive(Debug, Clone)]
pub struct ParseOutput {
    pub unit: Option<InterfaceUnit>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseOutput {
    fn failed(diag: Diagnostic) -> Self {
        ParseOutput { unit: None, diagnostics: vec![diag] }
    }
}

/// Tokenize and parse interface source text.
pub fn parse_interface(source: &str) -> ParseOutput {
    match tokenize(source) {
        Ok(tokens) => parse_tokens(tokens),
        Err(d) => ParseOutput::failed(d),
    }
}

/// Parse raw bytes; invalid UTF-8 is reported as a diagnostic.
pub fn parse_bytes(bytes: &[u8]) -> ParseOutput {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse_interface(s),
        Err(e) => {
            let prefix = &bytes[..e.valid_up_to()];
            let line = prefix.iter().filter(|b| **b == b'\n').count() as u32 + 1;
            let col = prefix.iter().rev().take_while(|b| **b != b'\n').count() as u32 + 1;
            ParseOutput::failed(Diagnostic::error(ids::LEX, Span::new(line, col), "input is not valid UTF-8"))
        }
    }
}

/// Parse a token stream produced by [`tokenize`].
pub fn parse_tokens(tokens: Vec<Token>) -> ParseOutput {
    let mut p = Parser::new(tokens, false);
    p.parse_items_until_eof();
    let Parser { items, spans, mut diags, .. } = p;

    let modules: Vec<(usize, &String)> = items
        .iter()
        .enumerate()
        .filter_map(|(i, it)| match it {
            Item::Directive(Directive::ModuleName(n)) => Some((i, n)),
            _ => None,
        })
        .collect();
    let module_name = match modules.as_slice() {
        [] => {
            diags.push(Diagnostic::error(ids::MISSING_MODULE, Span::new(1, 1), "missing %module directive"));
            None
        }
        [(_, name)] => Some((*name).clone()),
        [_, rest @ ..] => {
            for (i, _) in rest {
                diags.push(Diagnostic::error(ids::DUPLICATE_MODULE, spans[*i], "more than one %module directive"));
            }
            None
        }
    };

    let unit = match module_name {
        Some(module_name) if !has_errors(&diags) => Some(InterfaceUnit { module_name, items, spans }),
        _ => None,
    };
    ParseOutput { unit, diagnostics: diags }
}

type PResult<T> = Result<T, Diagnostic>;

/// A declaration as seen by the shared function/variable rule, before it is
/// placed at file scope or inside a class.
enum Decl {
    Function(FunctionDecl),
    Constructor { params: Vec<Param>, doc: Option<String> },
    Field(FieldDecl),
    Unsupported { name: String, reason: String },
}

impl Decl {
    fn into_item(self) -> Option<Item> {
        match self {
            Decl::Function(f) => Some(Item::Function(f)),
            Decl::Unsupported { name, reason } => Some(Item::Unsupported { name, reason }),
            // only produced in class context
            Decl::Constructor { .. } | Decl::Field(_) => None,
        }
    }
}

const FUNDAMENTAL_WORDS: &[&str] =
    &["void", "bool", "char", "short", "int", "long", "float", "double", "signed", "unsigned"];

const DECL_SPECIFIERS: &[&str] = &["static", "inline", "virtual", "explicit", "constexpr", "extern"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
    items: Vec<Item>,
    spans: Vec<Span>,
    /// Parsing the body of an `%inline` block rather than the interface file itself.
    in_verbatim: bool,
}

impl Parser {
    fn new(mut toks: Vec<Token>, in_verbatim: bool) -> Self {
        if !matches!(toks.last().map(|t| &t.kind), Some(TokenKind::Eof)) {
            let span = toks.last().map(|t| t.span).unwrap_or_default();
            toks.push(Token { kind: TokenKind::Eof, span, doc: None, spaced: false });
        }
        Parser { toks, pos: 0, diags: Vec::new(), items: Vec::new(), spans: Vec::new(), in_verbatim }
    }

    // ---- token helpers ----

    fn peek(&self) -> &Token {
        self.peek_at(0)
    }

    fn peek_at(&self, n: usize) -> &Token {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek().kind, TokenKind::Eof)
    }

    fn at_sym(&self, s: &str) -> bool {
        self.peek().is_sym(s)
    }

    fn at_ident(&self, s: &str) -> bool {
        self.peek().is_ident(s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_ident(&mut self, s: &str) -> bool {
        if self.at_ident(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_here(&self, msg: impl Into<String>) -> Diagnostic {
        let t = self.peek();
        let found = match &t.kind {
            TokenKind::Eof => "end of input".to_string(),
            _ => format!("`{}`", t.text()),
        };
        Diagnostic::error(ids::SYNTAX, t.span, format!("{}, found {}", msg.into(), found))
    }

    fn expect_sym(&mut self, s: &str) -> PResult<Span> {
        if self.at_sym(s) {
            Ok(self.bump().span)
        } else {
            Err(self.error_here(format!("expected `{s}`")))
        }
    }

    fn expect_ident(&mut self) -> PResult<String> {
        match &self.peek().kind {
            TokenKind::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error_here("expected identifier")),
        }
    }

    /// Skip a balanced `{...}`, `(...)` or `[...]` group starting at the current token.
    fn skip_group(&mut self) {
        let (open, close) = match &self.peek().kind {
            TokenKind::Sym("{") => ("{", "}"),
            TokenKind::Sym("(") => ("(", ")"),
            TokenKind::Sym("[") => ("[", "]"),
            _ => return,
        };
        let mut depth = 0usize;
        while !self.at_eof() {
            let t = self.bump();
            if t.is_sym(open) {
                depth += 1;
            } else if t.is_sym(close) {
                depth -= 1;
                if depth == 0 {
                    return;
                }
            }
        }
    }

    /// Resynchronize after an error: stop after the next `;` or balanced `}`
    /// group, or before `}` closing an enclosing scope.
    fn recover(&mut self) {
        loop {
            match &self.peek().kind {
                TokenKind::Eof => return,
                TokenKind::Sym(";") => {
                    self.bump();
                    return;
                }
                TokenKind::Sym("{") => {
                    self.skip_group();
                    self.eat_sym(";");
                    return;
                }
                TokenKind::Sym("}") => return,
                TokenKind::Directive(_) | TokenKind::Hash(_) | TokenKind::Verbatim(_) => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    /// Collect expression tokens up to (not including) a terminator at nesting depth 0.
    fn collect_expr(&mut self, terminators: &[&str]) -> String {
        let mut out = String::new();
        let mut depth = 0i32;
        while !self.at_eof() {
            let t = self.peek();
            if depth == 0 && terminators.iter().any(|s| t.is_sym(s)) {
                break;
            }
            if t.is_sym("(") || t.is_sym("[") || t.is_sym("{") {
                depth += 1;
            } else if t.is_sym(")") || t.is_sym("]") || t.is_sym("}") {
                if depth == 0 {
                    break;
                }
                depth -= 1;
            }
            let t = self.bump();
            if t.spaced && !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&t.text());
        }
        out
    }

    fn push_item(&mut self, item: Item, span: Span) {
        self.items.push(item);
        self.spans.push(span);
    }

    // ---- items ----

    fn parse_items_until_eof(&mut self) {
        while !self.at_eof() {
            if self.at_sym("}") {
                let d = self.error_here("unbalanced closing brace");
                self.diags.push(d);
                self.bump();
                continue;
            }
            let start = self.pos;
            if let Err(d) = self.parse_item() {
                self.diags.push(d);
                self.recover();
                if self.pos == start {
                    self.bump();
                }
            }
        }
    }

    fn parse_item(&mut self) -> PResult<()> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Directive(name) => self.parse_directive(name, tok.span),
            TokenKind::Verbatim(text) => {
                self.bump();
                self.push_item(
                    Item::Verbatim(VerbatimBlock { kind: VerbatimKind::Header, text: text.clone(), declared: 0 }),
                    tok.span,
                );
                Ok(())
            }
            TokenKind::Hash(text) => {
                self.bump();
                self.parse_hash_line(text, tok.span);
                Ok(())
            }
            TokenKind::Sym(";") => {
                self.bump();
                Ok(())
            }
            _ => {
                for item in self.parse_declaration(tok.doc.clone())? {
                    self.push_item(item, tok.span);
                }
                Ok(())
            }
        }
    }

    fn parse_hash_line(&mut self, text: &str, span: Span) {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("define").filter(|r| r.starts_with(char::is_whitespace)) {
            let rest = rest.trim_start();
            let name_len = rest
                .char_indices()
                .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let name = &rest[..name_len];
            let value = &rest[name_len..];
            if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
                self.diags.push(Diagnostic::error(ids::SYNTAX, span, "malformed #define"));
            } else if value.starts_with('(') {
                self.diags.push(Diagnostic::warning(
                    ids::PREPROCESSOR,
                    span,
                    format!("function-like macro `{name}` ignored"),
                ));
            } else {
                let value = value.trim().to_string();
                self.push_item(Item::Constant(ConstantMacro { name: name.to_string(), value }), span);
            }
        } else if !self.in_verbatim {
            let word = text.split_whitespace().next().unwrap_or("");
            self.diags.push(Diagnostic::warning(
                ids::PREPROCESSOR,
                span,
                format!("preprocessor directive `#{word}` ignored; place it inside a %{{ %}} block"),
            ));
        }
    }

    fn parse_name_list(&mut self) -> PResult<Vec<String>> {
        let mut names = vec![self.parse_qualified_name()?];
        while self.eat_sym(",") {
            names.push(self.parse_qualified_name()?);
        }
        self.eat_sym(";");
        Ok(names)
    }

    fn parse_qualified_name(&mut self) -> PResult<String> {
        let mut name = self.expect_ident()?;
        while self.at_sym("::") {
            self.bump();
            name.push_str("::");
            name.push_str(&self.expect_ident()?);
        }
        Ok(name)
    }

    fn parse_directive(&mut self, name: &str, span: Span) -> PResult<()> {
        self.bump();
        let directive = match name {
            "module" => {
                if self.at_sym("(") {
                    self.skip_group();
                }
                let n = self.expect_ident()?;
                self.eat_sym(";");
                Directive::ModuleName(n)
            }
            "template" => {
                self.expect_sym("(")?;
                let alias = self.expect_ident()?;
                self.expect_sym(")")?;
                let target = self.parse_qualified_name()?;
                self.expect_sym("<")?;
                let args = self.parse_template_args()?;
                self.expect_sym(";")?;
                Directive::TemplateInstantiation { alias, target, args }
            }
            "apply" => self.parse_apply()?,
            "exception" | "noexception" => {
                let scope = if self.peek().ident().is_some() {
                    ExceptionScope::Only(self.parse_qualified_name()?)
                } else {
                    ExceptionScope::All
                };
                self.expect_sym(";")?;
                Directive::ExceptionPolicy { enabled: name == "exception", scope }
            }
            "fortranbindc" => Directive::BindC(self.parse_name_list()?),
            "fortranbindc_type" => Directive::BindCType(self.parse_name_list()?),
            "fortranconst" => Directive::FortranConst(self.parse_name_list()?),
            "inline" => {
                let tok = self.peek().clone();
                let TokenKind::Verbatim(text) = &tok.kind else {
                    return Err(self.error_here("expected `%{` after %inline"));
                };
                self.bump();
                self.parse_inline(text, tok.span);
                return Ok(());
            }
            other => {
                return Err(Diagnostic::error(
                    ids::UNKNOWN_DIRECTIVE,
                    span,
                    format!("unsupported directive `%{other}`"),
                ))
            }
        };
        self.push_item(Item::Directive(directive), span);
        Ok(())
    }

    fn parse_inline(&mut self, text: &str, span: Span) {
        let origin = Span::new(span.line, span.col + 2);
        let block_index = self.items.len();
        self.push_item(
            Item::Verbatim(VerbatimBlock { kind: VerbatimKind::Inline, text: text.to_string(), declared: 0 }),
            span,
        );
        match tokenize_at(text, origin) {
            Ok(toks) => {
                let mut sub = Parser::new(toks, true);
                sub.parse_items_until_eof();
                let declared = sub.items.len();
                self.diags.append(&mut sub.diags);
                self.items.append(&mut sub.items);
                self.spans.append(&mut sub.spans);
                if let Item::Verbatim(v) = &mut self.items[block_index] {
                    v.declared = declared;
                }
            }
            Err(d) => self.diags.push(d),
        }
    }

    fn parse_apply(&mut self) -> PResult<Directive> {
        let pattern_span = self.peek().span;
        let pattern = if self.at_sym("(") {
            self.bump();
            let params = self.parse_param_list()?;
            let is_array = params.len() == 2
                && params[0].name.as_deref() == Some("DATA")
                && params[0].ty.named_base() == Some("SWIGTYPE")
                && params[0].ty.pointers == 1
                && params[1].name.as_deref() == Some("SIZE")
                && params[1].ty.as_fundamental() == Some(Fundamental::SizeT);
            if !is_array {
                return Err(Diagnostic::error(ids::UNKNOWN_PATTERN, pattern_span, "unknown typemap pattern"));
            }
            TypemapPattern::ArraySpan
        } else {
            let p = self.parse_param()?;
            let is_index = p.name.as_deref() == Some("FORTRAN_INDEX")
                && p.ty.indirection() == Some(Indirection::Value)
                && p.ty.as_fundamental().is_some_and(Fundamental::is_integer);
            if !is_index {
                return Err(Diagnostic::error(ids::UNKNOWN_PATTERN, pattern_span, "unknown typemap pattern"));
            }
            TypemapPattern::FortranIndex
        };
        self.expect_sym("{")?;
        let mut targets = Vec::new();
        loop {
            match pattern {
                TypemapPattern::ArraySpan => {
                    self.expect_sym("(")?;
                    targets.push(self.parse_param_list()?);
                }
                TypemapPattern::FortranIndex => targets.push(vec![self.parse_param()?]),
            }
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym("}")?;
        self.eat_sym(";");
        Ok(Directive::ApplyTypemap { pattern, targets })
    }

    // ---- types ----

    fn at_type_start(&self) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(_) | TokenKind::Sym("::"))
    }

    fn parse_type(&mut self) -> PResult<TypeExpr> {
        let mut is_const = false;
        loop {
            match self.peek().ident() {
                Some("const") => is_const = true,
                Some("volatile" | "typename" | "struct" | "class" | "enum" | "union") => {}
                _ => break,
            }
            self.bump();
        }
        let mut ty = match self.peek().ident() {
            Some(w) if FUNDAMENTAL_WORDS.contains(&w) => TypeExpr::fundamental(self.parse_fundamental()?),
            Some(_) => self.parse_named_type()?,
            None if self.at_sym("::") => self.parse_named_type()?,
            None => return Err(self.error_here("expected type")),
        };
        loop {
            match self.peek().ident() {
                Some("const") => {
                    if ty.pointers == 0 {
                        is_const = true;
                    }
                }
                Some("volatile") => {}
                _ => match &self.peek().kind {
                    TokenKind::Sym("*") => ty.pointers = ty.pointers.saturating_add(1),
                    TokenKind::Sym("&") => ty.reference = RefKind::LValue,
                    TokenKind::Sym("&&") => ty.reference = RefKind::RValue,
                    _ => break,
                },
            }
            self.bump();
        }
        ty.is_const = is_const;
        Ok(ty)
    }

    fn parse_fundamental(&mut self) -> PResult<Fundamental> {
        let span = self.peek().span;
        let (mut signed, mut unsigned, mut short, mut long) = (false, false, 0, 0);
        let mut core: Option<&'static str> = None;
        while let Some(w) = self.peek().ident() {
            let word = match FUNDAMENTAL_WORDS.iter().find(|x| **x == w) {
                Some(x) => *x,
                None => break,
            };
            match word {
                "signed" => signed = true,
                "unsigned" => unsigned = true,
                "short" => short += 1,
                "long" => long += 1,
                "int" => {}
                other => {
                    if core.is_some() {
                        return Err(Diagnostic::error(ids::SYNTAX, span, "invalid combination of type specifiers"));
                    }
                    core = Some(other);
                }
            }
            self.bump();
        }
        use Fundamental::*;
        let f = match core {
            Some("void") => Void,
            Some("bool") => Bool,
            Some("float") => Float,
            Some("double") if long > 0 => LongDouble,
            Some("double") => Double,
            Some("char") if unsigned => UnsignedChar,
            Some("char") if signed => SignedChar,
            Some("char") => Char,
            _ if short > 0 => {
                if unsigned {
                    UnsignedShort
                } else {
                    Short
                }
            }
            _ if long >= 2 => {
                if unsigned {
                    UnsignedLongLong
                } else {
                    LongLong
                }
            }
            _ if long == 1 => {
                if unsigned {
                    UnsignedLong
                } else {
                    Long
                }
            }
            _ => {
                if unsigned {
                    UnsignedInt
                } else {
                    Int
                }
            }
        };
        Ok(f)
    }

    fn parse_named_type(&mut self) -> PResult<TypeExpr> {
        let mut name = String::new();
        if self.eat_sym("::") {
            name.push_str("::");
        }
        name.push_str(&self.expect_ident()?);
        let mut args = Vec::new();
        loop {
            if self.at_sym("<") {
                self.bump();
                args = self.parse_template_args()?;
            } else if self.at_sym("::") && matches!(self.peek_at(1).kind, TokenKind::Ident(_)) {
                self.bump();
                name.push_str("::");
                name.push_str(&self.expect_ident()?);
            } else {
                break;
            }
        }
        if args.is_empty() {
            if let Some(f) = Fundamental::from_builtin_name(&name) {
                return Ok(TypeExpr::fundamental(f));
            }
        }
        let mut ty = TypeExpr::named(name);
        ty.template_args = args;
        Ok(ty)
    }

    /// Parse template arguments after the opening `<`, consuming the closing `>`.
    fn parse_template_args(&mut self) -> PResult<Vec<TypeExpr>> {
        let mut args = Vec::new();
        if self.eat_sym(">") {
            return Ok(args);
        }
        loop {
            let arg = if self.at_type_start() && !self.peek().is_ident("true") && !self.peek().is_ident("false") {
                let mut ty = self.parse_type()?;
                if self.at_sym("(") {
                    // function type argument such as `bool(int, int)`
                    self.bump();
                    let params = self.parse_param_list()?;
                    ty = TypeExpr::new(BaseType::FnPtr {
                        ret: Box::new(ty),
                        params: params.into_iter().map(|p| p.ty).collect(),
                    });
                }
                ty
            } else {
                let text = self.collect_expr(&[",", ">"]);
                if text.is_empty() {
                    return Err(self.error_here("expected template argument"));
                }
                TypeExpr::new(BaseType::Value(text))
            };
            args.push(arg);
            if self.eat_sym(",") {
                continue;
            }
            self.expect_sym(">")?;
            return Ok(args);
        }
    }

    /// Parse a parameter list after the opening `(`, consuming the closing `)`.
    fn parse_param_list(&mut self) -> PResult<Vec<Param>> {
        let mut params = Vec::new();
        if self.eat_sym(")") {
            return Ok(params);
        }
        if self.at_ident("void") && self.peek_at(1).is_sym(")") {
            self.bump();
            self.bump();
            return Ok(params);
        }
        loop {
            if self.at_sym("...") {
                return Err(Diagnostic::error(ids::SYNTAX, self.peek().span, "variadic parameters are not supported"));
            }
            params.push(self.parse_param()?);
            if self.eat_sym(",") {
                continue;
            }
            self.expect_sym(")")?;
            return Ok(params);
        }
    }

    fn parse_param(&mut self) -> PResult<Param> {
        let ty = self.parse_type()?;
        let (ty, name) = self.parse_declarator(ty)?;
        let default = if self.eat_sym("=") {
            let text = self.collect_expr(&[",", ")", "}", ";"]);
            if text.is_empty() {
                return Err(self.error_here("expected default argument"));
            }
            Some(text)
        } else {
            None
        };
        Ok(Param { ty, name, default })
    }

    /// Parse an optional declarator name after a type, handling function-pointer
    /// declarators `(*name)(params)` and array suffixes (which decay to pointers).
    fn parse_declarator(&mut self, mut ty: TypeExpr) -> PResult<(TypeExpr, Option<String>)> {
        if self.at_sym("(") && self.peek_at(1).is_sym("*") {
            self.bump();
            self.bump();
            let mut is_const = false;
            while self.eat_ident("const") {
                is_const = true;
            }
            let name = match self.peek().ident() {
                Some(_) => Some(self.expect_ident()?),
                None => None,
            };
            self.expect_sym(")")?;
            self.expect_sym("(")?;
            let params = self.parse_param_list()?;
            let mut fp = TypeExpr::new(BaseType::FnPtr {
                ret: Box::new(ty),
                params: params.into_iter().map(|p| p.ty).collect(),
            });
            fp.is_const = is_const;
            return Ok((fp, name));
        }
        let name = match self.peek().ident() {
            Some(n) if !matches!(n, "const" | "volatile") => Some(self.expect_ident()?),
            _ => None,
        };
        while self.at_sym("[") {
            self.skip_group();
            ty.pointers = ty.pointers.saturating_add(1);
        }
        Ok((ty, name))
    }

    // ---- declarations ----

    fn parse_declaration(&mut self, doc: Option<String>) -> PResult<Vec<Item>> {
        match self.peek().ident() {
            Some("template") => return self.parse_template(doc).map(|i| vec![i]),
            Some("typedef") => return self.parse_typedef(doc),
            Some("enum") => {
                if self.enum_definition_follows() {
                    return Ok(self.parse_enum(doc, None)?.map(Item::Enum).into_iter().collect());
                }
            }
            Some("class" | "struct") => {
                if self.class_definition_follows() {
                    return Ok(vec![Item::Class(self.parse_class(doc, None)?)]);
                }
            }
            Some("union") => {
                return Ok(vec![self.skip_unsupported("union", "unions are not supported")]);
            }
            Some("namespace") => {
                self.bump();
                let name = self.peek().ident().unwrap_or("").to_string();
                while !self.at_eof() && !self.at_sym("{") && !self.at_sym(";") {
                    self.bump();
                }
                self.skip_group();
                self.eat_sym(";");
                return Ok(vec![Item::Unsupported {
                    name: format!("namespace {name}"),
                    reason: "namespaces are not supported".into(),
                }]);
            }
            Some("using" | "static_assert") => {
                let what = self.peek().text();
                return Ok(vec![self.skip_unsupported(&what, "declaration is not supported")]);
            }
            Some("extern") if matches!(&self.peek_at(1).kind, TokenKind::Str(s) if s == "\"C\"") => {
                self.bump();
                self.bump();
                if self.at_sym("{") {
                    self.bump();
                    let mut out = Vec::new();
                    while !self.at_eof() && !self.at_sym("}") {
                        let doc = self.peek().doc.clone();
                        if self.at_sym(";") {
                            self.bump();
                            continue;
                        }
                        let start = self.pos;
                        match self.parse_declaration(doc) {
                            Ok(items) => out.extend(items),
                            Err(d) => {
                                self.diags.push(d);
                                self.recover();
                                if self.pos == start {
                                    self.bump();
                                }
                            }
                        }
                    }
                    self.expect_sym("}")?;
                    return Ok(out);
                }
                return self.parse_declaration(doc);
            }
            _ => {}
        }
        Ok(self.parse_function_or_variable(doc, None)?.into_iter().filter_map(Decl::into_item).collect())
    }

    fn skip_unsupported(&mut self, name: &str, reason: &str) -> Item {
        while !self.at_eof() && !self.at_sym(";") && !self.at_sym("{") {
            self.bump();
        }
        if self.at_sym("{") {
            self.skip_group();
        }
        self.eat_sym(";");
        Item::Unsupported { name: name.to_string(), reason: reason.to_string() }
    }

    fn enum_definition_follows(&self) -> bool {
        // enum [class|struct] [Name] [: type] {   or   enum Name ;
        let mut i = 1;
        if matches!(self.peek_at(i).ident(), Some("class" | "struct")) {
            i += 1;
        }
        if self.peek_at(i).ident().is_some() {
            i += 1;
        }
        let t = self.peek_at(i);
        t.is_sym("{") || t.is_sym(":") || t.is_sym(";")
    }

    fn class_definition_follows(&self) -> bool {
        let mut i = 1;
        if self.peek_at(i).ident().is_none() {
            return self.peek_at(i).is_sym("{");
        }
        i += 1;
        if self.peek_at(i).is_ident("final") {
            i += 1;
        }
        let t = self.peek_at(i);
        t.is_sym("{") || t.is_sym(":") || t.is_sym(";")
    }

    fn parse_enum(&mut self, doc: Option<String>, name_override: Option<String>) -> PResult<Option<EnumDecl>> {
        self.bump(); // enum
        let scoped = matches!(self.peek().ident(), Some("class" | "struct"));
        if scoped {
            self.bump();
        }
        let mut name = match self.peek().ident() {
            Some(_) => Some(self.expect_ident()?),
            None => None,
        };
        if self.eat_sym(":") {
            self.parse_type()?;
        }
        if self.eat_sym(";") {
            // forward declaration
            return Ok(None);
        }
        self.expect_sym("{")?;
        let mut enumerators = Vec::new();
        while !self.at_sym("}") {
            let en = self.expect_ident()?;
            let value = if self.eat_sym("=") {
                let text = self.collect_expr(&[",", "}"]);
                if text.is_empty() {
                    return Err(self.error_here("expected enumerator value"));
                }
                Some(text)
            } else {
                None
            };
            enumerators.push(Enumerator { name: en, value });
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym("}")?;
        if name_override.is_none() {
            // `enum E {...} e;` declares a variable too; ignore it.
            while !self.at_eof() && !self.at_sym(";") {
                self.bump();
            }
            self.expect_sym(";")?;
        }
        if name_override.is_some() {
            name = name_override;
        }
        Ok(Some(EnumDecl { name, scoped, enumerators, doc }))
    }

    fn parse_typedef(&mut self, doc: Option<String>) -> PResult<Vec<Item>> {
        self.bump(); // typedef
                     // typedef struct [Tag] { ... } Name;
        let tagged_body = {
            let mut i = 1;
            if self.peek_at(i).ident().is_some() {
                i += 1;
            }
            self.peek_at(i).is_sym("{")
        };
        if matches!(self.peek().ident(), Some("struct" | "class")) && tagged_body {
            let save = self.pos;
            // find the typedef name after the closing brace
            self.bump();
            if self.peek().ident().is_some() {
                self.bump();
            }
            self.skip_group();
            let name = self.expect_ident()?;
            self.expect_sym(";")?;
            let end = self.pos;
            self.pos = save;
            let class = self.parse_class(doc, Some(name))?;
            self.pos = end;
            return Ok(vec![Item::Class(class)]);
        }
        if self.at_ident("enum") && self.enum_definition_follows() {
            let save = self.pos;
            self.bump();
            if matches!(self.peek().ident(), Some("class" | "struct")) {
                self.bump();
            }
            while !self.at_eof() && !self.at_sym("{") {
                self.bump();
            }
            self.skip_group();
            let name = self.expect_ident()?;
            self.expect_sym(";")?;
            let end = self.pos;
            self.pos = save;
            let e = self.parse_enum(doc, Some(name))?;
            self.pos = end;
            return Ok(e.map(Item::Enum).into_iter().collect());
        }
        let base = self.parse_type()?;
        let (ty, name) = self.parse_declarator(base)?;
        let name = name.ok_or_else(|| self.error_here("expected typedef name"))?;
        self.expect_sym(";")?;
        Ok(vec![Item::Typedef(TypedefDecl { name, ty })])
    }

    fn parse_template(&mut self, doc: Option<String>) -> PResult<Item> {
        let span = self.bump().span; // template
        self.expect_sym("<")?;
        if self.at_sym(">") {
            self.bump();
            let inner = self.skip_unsupported("template<>", "explicit specializations are not supported");
            return Ok(inner);
        }
        let mut params = Vec::new();
        loop {
            let p = if matches!(self.peek().ident(), Some("class" | "typename")) {
                self.bump();
                let n = self.expect_ident()?;
                TemplateParam::Type(n)
            } else {
                let ty = self.parse_type()?;
                let n = self.expect_ident()?;
                TemplateParam::Value { ty, name: n }
            };
            if self.eat_sym("=") {
                self.collect_expr(&[",", ">"]);
            }
            params.push(p);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(">")?;
        let doc = doc.or_else(|| self.peek().doc.clone());
        let decl = if matches!(self.peek().ident(), Some("class" | "struct")) && self.class_definition_follows() {
            Templated::Class(self.parse_class(doc, None)?)
        } else {
            let mut decls = self.parse_function_or_variable(doc, None)?;
            match decls.pop() {
                Some(Decl::Function(f)) if decls.is_empty() => Templated::Function(f),
                Some(Decl::Unsupported { name, reason }) => return Ok(Item::Unsupported { name, reason }),
                _ => return Err(Diagnostic::error(ids::SYNTAX, span, "template must declare a function or class")),
            }
        };
        Ok(Item::Template(TemplateDecl { params, decl }))
    }

    fn parse_decl_specifiers(&mut self) -> FnQualifiers {
        let mut q = FnQualifiers::default();
        while let Some(w) = self.peek().ident() {
            if !DECL_SPECIFIERS.contains(&w) {
                break;
            }
            match w {
                "static" => q.is_static = true,
                "virtual" => q.is_virtual = true,
                "extern" if matches!(self.peek_at(1).kind, TokenKind::Str(_)) => {
                    self.bump();
                }
                _ => {}
            }
            self.bump();
        }
        q
    }

    /// Skip trailing function qualifiers; returns (is_const, is_pure, deleted).
    fn parse_function_suffix(&mut self) -> PResult<(bool, bool, bool)> {
        let (mut is_const, mut pure, mut deleted) = (false, false, false);
        loop {
            match self.peek().ident() {
                Some("const") => is_const = true,
                Some("override" | "final" | "volatile") => {}
                Some("noexcept" | "throw") => {
                    self.bump();
                    if self.at_sym("(") {
                        self.skip_group();
                    }
                    continue;
                }
                _ => break,
            }
            self.bump();
        }
        if self.at_sym("->") {
            return Err(self.error_here("trailing return types are not supported"));
        }
        if self.eat_sym("=") {
            match &self.peek().kind {
                TokenKind::Number(n) if n == "0" => pure = true,
                TokenKind::Ident(w) if w == "default" => {}
                TokenKind::Ident(w) if w == "delete" => deleted = true,
                _ => return Err(self.error_here("expected `0`, `default` or `delete`")),
            }
            self.bump();
        }
        Ok((is_const, pure, deleted))
    }

    /// Consume either `;` or a function body. Returns true when a body was present.
    fn parse_body_or_semi(&mut self) -> PResult<bool> {
        if self.at_sym(":") {
            // constructor initializer list
            while !self.at_eof() && !self.at_sym("{") {
                if self.at_sym("(") {
                    self.skip_group();
                } else {
                    self.bump();
                }
            }
        }
        if self.at_sym("{") {
            self.skip_group();
            self.eat_sym(";");
            Ok(true)
        } else {
            self.expect_sym(";")?;
            Ok(false)
        }
    }

    /// Parse a function declaration or variable declaration. In class context
    /// (`class_name` set) variables become fields and constructors are recognized.
    fn parse_function_or_variable(&mut self, doc: Option<String>, class_name: Option<&str>) -> PResult<Vec<Decl>> {
        let mut quals = self.parse_decl_specifiers();
        if self.at_ident("operator") {
            return Ok(vec![self.skip_operator()]);
        }
        let ret = self.parse_type()?;
        if self.at_ident("operator") {
            return Ok(vec![self.skip_operator()]);
        }
        if let (Some(cls), true) = (class_name, self.at_sym("(") && !self.peek_at(1).is_sym("*")) {
            if ret.named_base() == Some(cls) && ret.pointers == 0 && ret.reference == RefKind::None {
                self.bump();
                let params = self.parse_param_list()?;
                let (_, _, deleted) = self.parse_function_suffix()?;
                self.parse_body_or_semi()?;
                if deleted {
                    return Ok(Vec::new());
                }
                return Ok(vec![Decl::Constructor { params, doc }]);
            }
        }
        let (ty, name) = self.parse_declarator(ret.clone())?;
        let Some(name) = name else {
            return Err(self.error_here("expected declarator name"));
        };
        if self.at_sym("::") {
            self.recover_to_item_end();
            return Ok(vec![Decl::Unsupported {
                name,
                reason: "out-of-class member definitions are not supported".into(),
            }]);
        }
        if self.at_sym("(") {
            self.bump();
            let params = match self.parse_param_list() {
                Ok(p) => p,
                Err(d) if d.message.starts_with("variadic") => {
                    self.recover_to_item_end();
                    return Ok(vec![Decl::Unsupported { name, reason: "variadic functions are not supported".into() }]);
                }
                Err(d) => return Err(d),
            };
            let (is_const, pure, deleted) = self.parse_function_suffix()?;
            let has_body = self.parse_body_or_semi()?;
            if deleted {
                return Ok(Vec::new());
            }
            quals.is_const = is_const;
            quals.is_pure = pure;
            return Ok(vec![Decl::Function(FunctionDecl { name, ret: ty, params, quals, has_body, doc })]);
        }
        // variable(s)
        let mut out = Vec::new();
        let (mut ty, mut name) = (ty, name);
        loop {
            let mut extent = None;
            if self.at_sym("[") {
                self.bump();
                extent = Some(self.collect_expr(&["]"]));
                self.expect_sym("]")?;
            }
            if self.eat_sym("=") {
                self.collect_expr(&[",", ";"]);
            } else if self.at_sym("{") {
                self.skip_group();
            }
            out.push(match class_name {
                Some(_) => {
                    Decl::Field(FieldDecl { ty: ty.clone(), name: name.clone(), extent, is_static: quals.is_static })
                }
                None => Decl::Unsupported { name: name.clone(), reason: "global variables are not supported".into() },
            });
            if !self.eat_sym(",") {
                self.expect_sym(";")?;
                return Ok(out);
            }
            ty = ret.strip_indirection();
            while self.at_sym("*") || self.at_sym("&") {
                if self.bump().is_sym("*") {
                    ty.pointers += 1;
                } else {
                    ty.reference = RefKind::LValue;
                }
            }
            name = self.expect_ident()?;
        }
    }

    fn recover_to_item_end(&mut self) {
        while !self.at_eof() && !self.at_sym(";") && !self.at_sym("{") {
            if self.at_sym("(") {
                self.skip_group();
            } else {
                self.bump();
            }
        }
        if self.at_sym("{") {
            self.skip_group();
        }
        self.eat_sym(";");
    }

    fn skip_operator(&mut self) -> Decl {
        self.bump(); // operator
        let mut op = String::from("operator");
        // the operator spelling runs until the parameter list
        if self.at_sym("(") && self.peek_at(1).is_sym(")") {
            op.push_str("()");
            self.bump();
            self.bump();
        }
        while !self.at_eof() && !self.at_sym("(") && !self.at_sym(";") {
            op.push_str(&self.bump().text());
        }
        self.recover_to_item_end();
        Decl::Unsupported { name: op, reason: "operator overloading is not supported".into() }
    }

    fn parse_class(&mut self, doc: Option<String>, name_override: Option<String>) -> PResult<ClassDecl> {
        let key = if self.bump().is_ident("class") { ClassKey::Class } else { ClassKey::Struct };
        let mut name = match self.peek().ident() {
            Some(_) => self.expect_ident()?,
            None => String::new(),
        };
        if let Some(n) = name_override.clone() {
            name = n;
        }
        if name.is_empty() {
            return Err(self.error_here("anonymous classes are not supported"));
        }
        self.eat_ident("final");
        if self.eat_sym(";") {
            return Ok(ClassDecl { key, name, bases: Vec::new(), members: Vec::new(), is_forward: true, doc });
        }
        let mut bases = Vec::new();
        if self.eat_sym(":") {
            loop {
                let mut access = key.default_access();
                loop {
                    match self.peek().ident() {
                        Some("public") => access = Access::Public,
                        Some("protected") => access = Access::Protected,
                        Some("private") => access = Access::Private,
                        Some("virtual") => {}
                        _ => break,
                    }
                    self.bump();
                }
                let ty = self.parse_named_type()?;
                bases.push(BaseSpec { access, ty });
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        self.expect_sym("{")?;
        let mut access = key.default_access();
        let mut members = Vec::new();
        while !self.at_eof() && !self.at_sym("}") {
            let start = self.pos;
            match self.parse_member(&name, &mut access) {
                Ok(ms) => members.extend(ms),
                Err(d) => {
                    self.diags.push(d);
                    self.recover();
                    if self.pos == start {
                        self.bump();
                    }
                }
            }
        }
        self.expect_sym("}")?;
        if name_override.is_none() {
            self.expect_sym(";")?;
        }
        Ok(ClassDecl { key, name, bases, members, is_forward: false, doc })
    }

    fn parse_member(&mut self, class_name: &str, access: &mut Access) -> PResult<Vec<ClassMember>> {
        let doc = self.peek().doc.clone();
        if let Some(a) = match self.peek().ident() {
            Some("public") => Some(Access::Public),
            Some("protected") => Some(Access::Protected),
            Some("private") => Some(Access::Private),
            _ => None,
        } {
            if self.peek_at(1).is_sym(":") {
                self.bump();
                self.bump();
                *access = a;
                return Ok(Vec::new());
            }
        }
        let acc = *access;
        let unsupported = |name: &str, reason: &str| ClassMember {
            access: acc,
            member: Member::Unsupported { name: name.to_string(), reason: reason.to_string() },
        };
        if self.eat_sym(";") {
            return Ok(Vec::new());
        }
        match self.peek().ident() {
            Some("friend") => {
                self.skip_unsupported("friend", "");
                return Ok(vec![unsupported("friend", "friend declarations are not supported")]);
            }
            Some("template") => {
                self.skip_member_template();
                return Ok(vec![unsupported("template", "member templates are not supported")]);
            }
            Some("using" | "typedef" | "static_assert") => {
                let w = self.peek().text();
                self.skip_unsupported(&w, "");
                return Ok(vec![unsupported(&w, "nested declarations are not supported")]);
            }
            Some("enum" | "class" | "struct" | "union") if self.is_nested_definition() => {
                let w = self.peek().text();
                self.skip_unsupported(&w, "");
                return Ok(vec![unsupported(&w, "nested type declarations are not supported")]);
            }
            _ => {}
        }
        // destructor
        let save = self.pos;
        let quals = self.parse_decl_specifiers();
        if self.at_sym("~") {
            self.bump();
            let n = self.expect_ident()?;
            if n != class_name {
                return Err(Diagnostic::error(
                    ids::SYNTAX,
                    self.peek().span,
                    format!("destructor `~{n}` does not match class `{class_name}`"),
                ));
            }
            self.expect_sym("(")?;
            self.parse_param_list()?;
            let (_, _, deleted) = self.parse_function_suffix()?;
            self.parse_body_or_semi()?;
            if deleted {
                return Ok(Vec::new());
            }
            return Ok(vec![ClassMember { access: acc, member: Member::Destructor { is_virtual: quals.is_virtual } }]);
        }
        self.pos = save;
        let decls = self.parse_function_or_variable(doc, Some(class_name))?;
        Ok(decls
            .into_iter()
            .map(|d| ClassMember {
                access: acc,
                member: match d {
                    Decl::Function(f) => Member::Method(f),
                    Decl::Constructor { params, doc } => Member::Constructor { params, doc },
                    Decl::Field(f) => Member::Field(f),
                    Decl::Unsupported { name, reason } => Member::Unsupported { name, reason },
                },
            })
            .collect())
    }

    fn is_nested_definition(&self) -> bool {
        let mut i = 1;
        while self.peek_at(i).ident().is_some() {
            i += 1;
        }
        let t = self.peek_at(i);
        t.is_sym("{") || t.is_sym(":") || (t.is_sym(";") && i == 2)
    }

    fn skip_member_template(&mut self) {
        self.bump();
        if self.at_sym("<") {
            let mut depth = 0;
            while !self.at_eof() {
                let t = self.bump();
                if t.is_sym("<") {
                    depth += 1;
                } else if t.is_sym(">") {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
            }
        }
        self.recover_to_item_end();
    }
}
