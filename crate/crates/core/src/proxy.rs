//! Executable model of proxy-handle ownership.
//!
//! Generated `release` and assignment code must behave exactly like
//! [`assign`] and [`release`] here. Traces drive the model and an
//! [`AllocationLedger`] records what happened to every object.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type ObjectId = u64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProxyState {
    pub cptr: Option<ObjectId>,
    pub own: bool,
    pub rvalue: bool,
    pub cnst: bool,
}

impl ProxyState {
    pub const NULL: ProxyState = ProxyState { cptr: None, own: false, rvalue: false, cnst: false };

    /// Flag word as stored in the C handle.
    pub fn flags(&self) -> u32 {
        use crate::typemaps::{FLAG_CONST, FLAG_OWN, FLAG_RVALUE};
        (self.own as u32 * FLAG_OWN) | (self.rvalue as u32 * FLAG_RVALUE) | (self.cnst as u32 * FLAG_CONST)
    }

    fn is_well_formed(&self) -> bool {
        self.cptr.is_some() || !(self.own || self.rvalue || self.cnst)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AllocationLedger {
    pub live: BTreeSet<ObjectId>,
    pub total_allocated: u64,
    pub total_freed: u64,
    pub double_free_events: u64,
    /// Owning handles that outlived their object.
    pub use_after_free_events: u64,
    /// Objects that momentarily had more than one owning handle.
    pub ownership_violations: u64,
    /// Assignments from a temporary that did not own its object.
    pub nonowning_rvalue_events: u64,
    next_id: ObjectId,
}

impl AllocationLedger {
    pub fn leaks(&self) -> u64 {
        self.live.len() as u64
    }

    fn allocate(&mut self) -> ObjectId {
        self.next_id += 1;
        self.total_allocated += 1;
        self.live.insert(self.next_id);
        self.next_id
    }

    fn destroy(&mut self, id: ObjectId) {
        if self.live.remove(&id) {
            self.total_freed += 1;
        } else {
            self.double_free_events += 1;
        }
    }
}

/// New temporary returned from a constructor: owned and marked rvalue.
pub fn construct(ledger: &mut AllocationLedger) -> ProxyState {
    ProxyState { cptr: Some(ledger.allocate()), own: true, rvalue: true, cnst: false }
}

/// Proxy assignment `lhs = rhs`; returns the new (lhs, rhs).
pub fn assign(lhs: ProxyState, rhs: ProxyState, ledger: &mut AllocationLedger) -> (ProxyState, ProxyState) {
    if lhs.cptr.is_some() && lhs.cptr == rhs.cptr {
        return (lhs, rhs);
    }
    if lhs.own {
        if let Some(id) = lhs.cptr {
            ledger.destroy(id);
        }
    }
    if rhs.cptr.is_none() {
        return (ProxyState::NULL, rhs);
    }
    if rhs.rvalue {
        if !rhs.own {
            ledger.nonowning_rvalue_events += 1;
        }
        let moved = ProxyState { cptr: rhs.cptr, own: rhs.own, rvalue: false, cnst: rhs.cnst };
        (moved, ProxyState::NULL)
    } else {
        let alias = ProxyState { cptr: rhs.cptr, own: false, rvalue: false, cnst: rhs.cnst };
        (alias, rhs)
    }
}

/// Nullify a handle, destroying the object if the handle owns it.
pub fn release(s: ProxyState, ledger: &mut AllocationLedger) -> ProxyState {
    if s.own {
        if let Some(id) = s.cptr {
            ledger.destroy(id);
        }
    }
    ProxyState::NULL
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceOp {
    New(Vec<String>),
    Move { dst: String, ctor: String },
    Alias { dst: String, src: String },
    Release(String),
}

impl fmt::Display for TraceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceOp::New(vars) => write!(f, "NEW {}", vars.join(" ")),
            TraceOp::Move { dst, ctor } => write!(f, "MOVE {dst} {ctor}"),
            TraceOp::Alias { dst, src } => write!(f, "ALIAS {dst} {src}"),
            TraceOp::Release(v) => write!(f, "RELEASE {v}"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct TraceError {
    pub line: usize,
    pub message: String,
}

/// Parse the line-oriented trace format. Blank lines and `#` comments are ignored.
pub fn parse_trace(text: &str) -> Result<Vec<TraceOp>, TraceError> {
    let mut ops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| TraceError { line: i + 1, message: message.to_string() };
        let (op, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let args: Vec<&str> = rest.split_whitespace().collect();
        let op = match op {
            "NEW" if !args.is_empty() => TraceOp::New(args.iter().map(|s| s.to_string()).collect()),
            "MOVE" if args.len() >= 2 => {
                let dst = args[0].to_string();
                let ctor = rest.trim_start()[dst.len()..].trim().to_string();
                TraceOp::Move { dst, ctor }
            }
            "ALIAS" if args.len() == 2 => TraceOp::Alias { dst: args[0].into(), src: args[1].into() },
            "RELEASE" if args.len() == 1 => TraceOp::Release(args[0].into()),
            "NEW" | "MOVE" | "ALIAS" | "RELEASE" => return Err(err("wrong number of operands")),
            _ => return Err(err(&format!("unknown operation `{op}`"))),
        };
        ops.push(op);
    }
    Ok(ops)
}

/// Run a trace, then release every variable as scope exit would.
/// Undeclared variables are an error.
pub fn run_trace(ops: &[TraceOp]) -> Result<AllocationLedger, String> {
    let mut ledger = AllocationLedger::default();
    let mut vars: BTreeMap<String, ProxyState> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    let get = |vars: &BTreeMap<String, ProxyState>, v: &str| {
        vars.get(v).copied().ok_or_else(|| format!("variable `{v}` used before NEW"))
    };
    for op in ops {
        match op {
            TraceOp::New(names) => {
                for n in names {
                    if vars.insert(n.clone(), ProxyState::NULL).is_some() {
                        return Err(format!("variable `{n}` declared twice"));
                    }
                    order.push(n.clone());
                }
            }
            TraceOp::Move { dst, .. } => {
                let lhs = get(&vars, dst)?;
                let tmp = construct(&mut ledger);
                let (lhs, tmp) = assign(lhs, tmp, &mut ledger);
                // a temporary left holding its object would be leaked
                release(tmp, &mut ledger);
                vars.insert(dst.clone(), lhs);
            }
            TraceOp::Alias { dst, src } => {
                let lhs = get(&vars, dst)?;
                let rhs = get(&vars, src)?;
                let (lhs, rhs) = assign(lhs, rhs, &mut ledger);
                vars.insert(src.clone(), rhs);
                vars.insert(dst.clone(), lhs);
            }
            TraceOp::Release(v) => {
                let s = get(&vars, v)?;
                vars.insert(v.clone(), release(s, &mut ledger));
            }
        }
        audit(&vars, &mut ledger);
    }
    for v in &order {
        let s = vars[v];
        vars.insert(v.clone(), release(s, &mut ledger));
    }
    Ok(ledger)
}

fn audit(vars: &BTreeMap<String, ProxyState>, ledger: &mut AllocationLedger) {
    let mut owners: BTreeMap<ObjectId, u32> = BTreeMap::new();
    for s in vars.values() {
        assert!(s.is_well_formed(), "malformed handle state {s:?}");
        if let (true, Some(id)) = (s.own, s.cptr) {
            *owners.entry(id).or_default() += 1;
            if !ledger.live.contains(&id) {
                ledger.use_after_free_events += 1;
            }
        }
    }
    ledger.ownership_violations += owners.values().filter(|&&n| n > 1).count() as u64;
}

/// The ownership walkthrough: two constructions, an alias, two releases.
pub const WALKTHROUGH_TRACE: &str = "\
NEW owner alias
MOVE owner Foo(2)
MOVE owner Foo(3)
ALIAS alias owner
RELEASE alias
RELEASE owner
";

/// Random well-formed trace over `nvars` variables with at most `max_len` ops.
pub fn random_trace<R: rand::RngExt + ?Sized>(rng: &mut R, max_len: usize, nvars: usize) -> Vec<TraceOp> {
    let names: Vec<String> = (0..nvars.max(1)).map(|i| format!("v{i}")).collect();
    let mut ops = vec![TraceOp::New(names.clone())];
    let len = rng.random_range(1..max_len.max(2));
    while ops.len() < len {
        let pick = |rng: &mut R| names[rng.random_range(0..names.len())].clone();
        let op = match rng.random_range(0..3) {
            0 => TraceOp::Move { dst: pick(rng), ctor: "Foo()".into() },
            1 => TraceOp::Alias { dst: pick(rng), src: pick(rng) },
            _ => TraceOp::Release(pick(rng)),
        };
        ops.push(op);
    }
    ops
}
