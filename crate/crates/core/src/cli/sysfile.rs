//! JSON files holding a reduction system together with its operator.
//!
//! Polynomials are written over positional generators t1..tn with exponent
//! variables x1..xn; conditions use the s-expression form.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::builtin::{FamilyKind, RuleFamily};
use crate::conditions::parse_sexpr;
use crate::diffop::{build_p, DerivationSpec, OperatorSpec};
use crate::poly::{fmt_q, parse_fraction, parse_laurent, parse_poly, MonomialOrder, Poly, Printer, Q};
use crate::rules::{ConditionalIdentity, ReductionRule, ReductionSystem};

pub const FORMAT_VERSION: u32 = 1;
/// α samples checked per rule when loading.
pub const LOAD_SAMPLES: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum SystemFileError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleEntry {
    pub id: usize,
    pub p: String,
    pub q: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemFile {
    pub format_version: u32,
    pub source: String,
    pub complete: bool,
    /// Display names of the generators; the file itself uses t1..tn.
    pub vars: Vec<String>,
    /// ∂t_i as `num` or `(num) / (den)`.
    pub deriv: Vec<String>,
    pub v: String,
    pub order: Vec<Vec<String>>,
    pub rules: Vec<RuleEntry>,
    #[serde(default)]
    pub families: Vec<String>,
}

fn family_kind(name: &str) -> Option<FamilyKind> {
    match name {
        "airy" => Some(FamilyKind::Airy),
        "cei-block1" => Some(FamilyKind::CeiV1),
        "cei-block2" => Some(FamilyKind::CeiV2),
        _ => None,
    }
}

pub fn to_file(sys: &ReductionSystem, op: &OperatorSpec) -> SystemFile {
    let n = sys.n();
    let pr = Printer::default_for(n);
    let deriv = op
        .deriv
        .num
        .iter()
        .zip(&op.deriv.den)
        .map(|(a, b)| if *b == Poly::one(n) { pr.poly(a) } else { format!("({}) / ({})", pr.poly(a), pr.poly(b)) })
        .collect();
    let order = sys.order.matrix().iter().map(|r| r.iter().map(fmt_q).collect()).collect();
    let rules = sys
        .rules
        .iter()
        .map(|r| RuleEntry { id: r.id, p: pr.laurent(r.p()), q: pr.laurent(r.q()), b: r.b().to_sexpr() })
        .collect();
    SystemFile {
        format_version: FORMAT_VERSION,
        source: sys.source.clone(),
        complete: sys.complete,
        vars: op.deriv.names.clone(),
        deriv,
        v: pr.poly(&op.v),
        order,
        rules,
        families: sys.families.iter().map(|f| f.name().to_string()).collect(),
    }
}

pub fn serialize_system(sys: &ReductionSystem, op: &OperatorSpec) -> String {
    let mut s = serde_json::to_string_pretty(&to_file(sys, op)).expect("plain data");
    s.push('\n');
    s
}

fn invalid(msg: impl Into<String>) -> SystemFileError {
    SystemFileError::Invalid(msg.into())
}

/// Rebuilds the system and its operator, re-validating every rule on
/// `LOAD_SAMPLES` sampled α.
pub fn from_file(f: &SystemFile) -> Result<(ReductionSystem, OperatorSpec), SystemFileError> {
    if f.format_version != FORMAT_VERSION {
        return Err(SystemFileError::Version(f.format_version));
    }
    let n = f.deriv.len();
    if f.vars.len() != n {
        return Err(invalid(format!("{} names but {n} derivatives", f.vars.len())));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let derivs = f
        .deriv
        .iter()
        .map(|d| parse_fraction(d, &names).map_err(|e| invalid(format!("derivative `{d}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let deriv = DerivationSpec::new(f.vars.clone(), derivs).map_err(|e| invalid(e.to_string()))?;
    let v = parse_poly(&f.v, &names).map_err(|e| invalid(format!("v: {e}")))?;
    let op = build_p(&deriv, &v).map_err(|e| invalid(e.to_string()))?;
    let rows: Vec<Vec<Q>> = f
        .order
        .iter()
        .map(|r| r.iter().map(|x| x.parse::<Q>().map_err(|_| invalid(format!("order entry `{x}`")))).collect())
        .collect::<Result<_, _>>()?;
    let ord = MonomialOrder::new(rows).map_err(|e| invalid(format!("order: {e}")))?;
    if ord.n() != n {
        return Err(invalid("order matrix dimension does not match the generators"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut rules = Vec::with_capacity(f.rules.len());
    for e in &f.rules {
        let ctx = |what: &str, msg: String| invalid(format!("rule {}: {what}: {msg}", e.id));
        let p = parse_laurent(&e.p, &names, n).map_err(|m| ctx("P", m.to_string()))?;
        let q = parse_laurent(&e.q, &names, n).map_err(|m| ctx("Q", m.to_string()))?;
        let b = parse_sexpr(&e.b, n).map_err(|m| ctx("B", m.to_string()))?;
        let ci = ConditionalIdentity::new(p, q, b);
        ci.check_sampled(&op, LOAD_SAMPLES, &mut rng).map_err(|m| ctx("identity", m.to_string()))?;
        let r = ReductionRule::new(e.id, ci, &ord).map_err(|m| ctx("rule", m.to_string()))?;
        if rules.iter().any(|x: &ReductionRule| x.id == e.id) {
            return Err(invalid(format!("duplicate rule id {}", e.id)));
        }
        rules.push(r);
    }
    let mut sys = ReductionSystem::new(ord, rules, &f.source);
    sys.complete = f.complete;
    for name in &f.families {
        let kind = family_kind(name).ok_or_else(|| invalid(format!("unknown family `{name}`")))?;
        let fam = RuleFamily::new(kind);
        if fam.order != sys.order {
            return Err(invalid(format!("family `{name}` uses a different monomial order")));
        }
        sys.families.push(Arc::new(fam));
    }
    Ok((sys, op))
}

pub fn load_system_str(text: &str) -> Result<(ReductionSystem, OperatorSpec), SystemFileError> {
    let f: SystemFile = serde_json::from_str(text)?;
    from_file(&f)
}

pub fn load_system(path: &std::path::Path) -> Result<(ReductionSystem, OperatorSpec), SystemFileError> {
    load_system_str(&std::fs::read_to_string(path)?)
}
