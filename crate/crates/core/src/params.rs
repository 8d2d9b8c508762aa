//! Parameter calculators for the Rödl-from-Erdős–Hajnal argument and the
//! inequality chain its counting contradiction relies on.
//!
//! Everything is exact: logarithms and powers are carried as rational
//! enclosures and every ceiling is taken only once the enclosure pins it.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::{
    e_enclosure, format_sig12, parse_rational, rat_int, rational, rational_power_enclosure, uint_to_rational,
    Enclosure, Rational,
};

const START_PREC: u32 = 64;
const MAX_PREC: u32 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Graphs: `k = 200⌈ε⁻¹ ln⁴(1/ε)⌉`, `1/δ = 16 k^(f-1)`.
    Graph,
    /// r-uniform hypergraphs: `k = C⌈ε⁻¹ ln⁴(1/ε)⌉`, `1/δ = C' k^(f-1)`.
    Hypergraph,
    /// Tournaments: `k = C⌈ε⁻² ln⁴(1/ε)⌉`, `1/δ = C' k^(f-1)`.
    Tournament,
}

impl Variant {
    /// Power of `1/ε` in `k` and `ℓ`.
    fn eps_power(self) -> u64 {
        match self {
            Variant::Tournament => 2,
            _ => 1,
        }
    }

    pub fn default_constants(self) -> (BigUint, Rational) {
        match self {
            Variant::Graph | Variant::Hypergraph => (BigUint::from(200u32), rat_int(16)),
            Variant::Tournament => (BigUint::from(200u32), rat_int(200)),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KFormula {
    #[default]
    Log4,
    /// `C⌈ε⁻ᵃ ln²(1/ε) f(⌈ε⁻ᵃ ln⁴(1/ε)⌉)²⌉`; report-only refinement.
    Log2Refined,
}

/// The growth function `f` of an f-Erdős–Hajnal property. Every evaluation
/// checks `2 <= f(k) <= ln k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthFunction {
    Constant(Rational),
    /// `f(k) = coef · ln k`, `0 < coef <= 1`.
    LogForm(Rational),
    /// Step function: `f(k)` is the value of the last entry with threshold `<= k`.
    Table(Vec<(u64, Rational)>),
}

impl GrowthFunction {
    pub fn validate(&self) -> Result<()> {
        match self {
            GrowthFunction::Constant(_) => Ok(()),
            GrowthFunction::LogForm(c) => {
                if !c.is_positive() || *c > Rational::one() {
                    return Err(Error::param(format!("log-form coefficient must lie in (0, 1], got {c}")));
                }
                Ok(())
            }
            GrowthFunction::Table(rows) => {
                if rows.is_empty() {
                    return Err(Error::param("growth table is empty"));
                }
                for w in rows.windows(2) {
                    if w[0].0 >= w[1].0 || w[0].1 > w[1].1 {
                        return Err(Error::param("growth table must have increasing thresholds and nondecreasing values"));
                    }
                }
                Ok(())
            }
        }
    }

    /// Parses `const:2`, `log:1/2` or `table:1=2,1000=5/2`.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, body) = text.split_once(':').ok_or_else(|| Error::input(format!("growth function `{text}` lacks a kind prefix")))?;
        let f = match kind {
            "const" | "constant" => GrowthFunction::Constant(parse_rational(body)?),
            "log" => GrowthFunction::LogForm(parse_rational(body)?),
            "table" => {
                let mut rows = Vec::new();
                for entry in body.split(',') {
                    let (k, v) = entry.split_once('=').ok_or_else(|| Error::input(format!("bad table entry `{entry}`")))?;
                    let k = k.trim().parse::<u64>().map_err(|e| Error::input(format!("bad threshold `{k}`: {e}")))?;
                    rows.push((k, parse_rational(v.trim())?));
                }
                GrowthFunction::Table(rows)
            }
            _ => return Err(Error::input(format!("unknown growth function kind `{kind}`"))),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn describe(&self) -> String {
        match self {
            GrowthFunction::Constant(c) => format!("const:{c}"),
            GrowthFunction::LogForm(c) => format!("log:{c}"),
            GrowthFunction::Table(rows) => {
                let parts: Vec<String> = rows.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("table:{}", parts.join(","))
            }
        }
    }

    /// Exact value when `f(k)` is rational.
    fn rational_at(&self, k: &BigUint) -> Option<Rational> {
        match self {
            GrowthFunction::Constant(c) => Some(c.clone()),
            GrowthFunction::LogForm(_) => None,
            GrowthFunction::Table(rows) => {
                let kk = k.to_u64().unwrap_or(u64::MAX);
                rows.iter().rev().find(|(th, _)| *th <= kk).map(|(_, v)| v.clone()).or_else(|| Some(rows[0].1.clone()))
            }
        }
    }

    /// Enclosure of `f(k)`, checking `2 <= f(k) <= ln k`.
    pub fn evaluate(&self, k: &BigUint, prec: u32) -> Result<Enclosure> {
        let ln_k = Enclosure::point(uint_to_rational(k)).ln(prec)?;
        let value = match (self, self.rational_at(k)) {
            (_, Some(v)) => Enclosure::point(v),
            (GrowthFunction::LogForm(c), None) => ln_k.scale(c),
            _ => unreachable!("only log-form is irrational"),
        };
        let two = Enclosure::point(rat_int(2));
        if value.compare(&two) == Some(Ordering::Less) || value.hi < rat_int(2) {
            return Err(Error::param(format!("growth function below 2 at k = {k}")));
        }
        let upper_ok = match self {
            GrowthFunction::LogForm(_) => true,
            _ => {
                // ln k is irrational for k >= 2, so doubling resolves the comparison
                let mut p = prec;
                loop {
                    let ln_k = Enclosure::point(uint_to_rational(k)).ln(p)?;
                    match value.compare(&ln_k) {
                        Some(Ordering::Greater) => break false,
                        Some(_) => break true,
                        None if p < MAX_PREC => p *= 2,
                        None => break false,
                    }
                }
            }
        };
        if !upper_ok {
            return Err(Error::param(format!("growth function exceeds ln k at k = {k}")));
        }
        if value.lo < rat_int(2) {
            return Err(Error::param(format!("growth function not provably >= 2 at k = {k}")));
        }
        Ok(value)
    }
}

/// Enclosure of `k^f` for `f` given by `growth`.
fn power_enclosure(k: &BigUint, f: &Enclosure, prec: u32) -> Result<Enclosure> {
    if f.is_point() {
        let (p, q) = (f.lo.numer(), f.lo.denom());
        if let (Some(p), Some(q)) = (p.to_u64(), q.to_u32()) {
            return Ok(rational_power_enclosure(k, p, q, prec));
        }
    }
    let ln_k = Enclosure::point(uint_to_rational(k)).ln(prec)?;
    Ok(f.mul(&ln_k).round_out(prec + 16).exp(prec))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamConstants {
    pub c: BigUint,
    pub c_prime: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremParams {
    pub variant: Variant,
    pub epsilon: Rational,
    pub growth: String,
    pub k_formula: KFormula,
    pub constants: ParamConstants,
    pub k: BigUint,
    pub f_k: Enclosure,
    /// `1/δ`; a point whenever `f(k)` is an integer.
    pub inv_delta: Enclosure,
    pub t: BigUint,
    pub ell: BigUint,
    /// Precision (bits) at which every ceiling resolved.
    pub precision: u32,
    /// ε lay outside `(0, 1/100)` and the override was used.
    pub exploratory: bool,
}

impl TheoremParams {
    pub fn delta_exact(&self) -> Option<Rational> {
        self.inv_delta.is_point().then(|| self.inv_delta.lo.recip())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "variant": self.variant,
            "epsilon": self.epsilon.to_string(),
            "growth": self.growth,
            "k_formula": self.k_formula,
            "C": self.constants.c.to_string(),
            "C_prime": self.constants.c_prime.to_string(),
            "k": self.k.to_string(),
            "f_k": enclosure_json(&self.f_k),
            "inv_delta": enclosure_json(&self.inv_delta),
            "delta": self.delta_exact().map(|d| d.to_string()),
            "t": self.t.to_string(),
            "ell": self.ell.to_string(),
            "precision": self.precision,
            "exploratory": self.exploratory,
        })
    }
}

fn enclosure_json(e: &Enclosure) -> serde_json::Value {
    if e.is_point() {
        serde_json::json!({ "exact": e.lo.to_string() })
    } else {
        serde_json::json!({
            "lo": format_sig12(crate::exact::rational_to_f64(&e.lo)),
            "hi": format_sig12(crate::exact::rational_to_f64(&e.hi)),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct ParamOptions {
    /// Overrides `(C, C')`; ignored for [`Variant::Graph`].
    pub constants: Option<(BigUint, Rational)>,
    pub k_formula: KFormula,
    /// Accept ε outside `(0, 1/100)` (still inside `(0, 1)`).
    pub allow_any_eps: bool,
}

fn ceil_of(e: &Enclosure) -> Option<BigUint> {
    e.ceil_exact().and_then(|v| v.to_biguint())
}

fn attempt(variant: Variant, epsilon: &Rational, f: &GrowthFunction, consts: &ParamConstants, k_formula: KFormula, prec: u32) -> Result<Option<TheoremParams>> {
    let inv_eps = epsilon.recip();
    let eps_pow = Enclosure::point(crate::exact::rational_pow(&inv_eps, variant.eps_power()));
    let log = Enclosure::point(inv_eps.clone()).ln(prec)?;
    let Some(base) = ceil_of(&eps_pow.mul(&log.pow(4))) else { return Ok(None) };
    let k = match k_formula {
        KFormula::Log4 => &consts.c * base,
        KFormula::Log2Refined => {
            let fb = f.evaluate(&base, prec)?;
            let Some(inner) = ceil_of(&eps_pow.mul(&log.pow(2)).mul(&fb.pow(2))) else { return Ok(None) };
            &consts.c * inner
        }
    };
    if k < BigUint::from(2u32) {
        return Err(Error::param("k must be at least 2"));
    }
    let f_k = f.evaluate(&k, prec)?;
    let k_pow_f = power_enclosure(&k, &f_k, prec)?;
    let Some(t) = ceil_of(&k_pow_f) else { return Ok(None) };
    let inv_delta = k_pow_f.scale(&(consts.c_prime.clone() / uint_to_rational(&k)));
    if !inv_delta.lo.is_positive() {
        return Ok(None);
    }
    let Some(ell) = ceil_of(&eps_pow.mul(&inv_delta.ln(prec)?)) else { return Ok(None) };
    Ok(Some(TheoremParams {
        variant,
        epsilon: epsilon.clone(),
        growth: f.describe(),
        k_formula,
        constants: consts.clone(),
        k,
        f_k,
        inv_delta,
        t,
        ell,
        precision: prec,
        exploratory: false,
    }))
}

/// Computes `(k, 1/δ, t, ℓ)` for `variant` at `epsilon`. Precision doubles
/// until every ceiling is unambiguous.
pub fn compute_params(variant: Variant, epsilon: &Rational, f: &GrowthFunction, options: &ParamOptions) -> Result<TheoremParams> {
    f.validate()?;
    if !epsilon.is_positive() || *epsilon >= Rational::one() {
        return Err(Error::param(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let exploratory = *epsilon >= rational(1, 100);
    if exploratory && !options.allow_any_eps {
        return Err(Error::param(format!("epsilon must lie in (0, 1/100), got {epsilon}; pass the override for exploratory values")));
    }
    let (c, c_prime) = match (variant, &options.constants) {
        (Variant::Graph, _) | (_, None) => variant.default_constants(),
        (_, Some((c, cp))) => (c.clone(), cp.clone()),
    };
    if c.is_zero() || !c_prime.is_positive() {
        return Err(Error::param("constants C and C' must be positive"));
    }
    let consts = ParamConstants { c, c_prime };
    let mut prec = START_PREC;
    loop {
        if let Some(mut p) = attempt(variant, epsilon, f, &consts, options.k_formula, prec)? {
            p.exploratory = exploratory;
            return Ok(p);
        }
        if prec >= MAX_PREC {
            return Err(Error::capability(format!("ceilings unresolved at {MAX_PREC} bits")));
        }
        prec *= 2;
    }
}

// ---------------------------------------------------------------------------
// Inequality chain
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "<=")]
    LessEq,
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = ">=")]
    GreaterEq,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::LessEq => "<=",
            Relation::Greater => ">",
            Relation::GreaterEq => ">=",
        }
    }

    fn decide(self, lhs: &Enclosure, rhs: &Enclosure) -> Option<bool> {
        let ord = lhs.compare(rhs)?;
        Some(match self {
            Relation::Less => ord == Ordering::Less,
            Relation::LessEq => ord != Ordering::Greater,
            Relation::Greater => ord == Ordering::Greater,
            Relation::GreaterEq => ord != Ordering::Less,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub relation: Relation,
    pub lhs: Enclosure,
    pub rhs: Enclosure,
    /// `false` also when the enclosures never separated.
    pub pass: bool,
    pub resolved: bool,
}

impl ChainCheck {
    pub fn describe(&self) -> String {
        format!(
            "{} {}: lhs {:?} {} rhs {:?} -> {}",
            self.name,
            self.statement,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            if !self.resolved {
                "unresolved"
            } else if self.pass {
                "pass"
            } else {
                "fail"
            }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub h: usize,
    pub checks: Vec<ChainCheck>,
    /// `2e² < 15`, used when turning the counting bound into a contradiction.
    pub auxiliary: ChainCheck,
}

impl ChainReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass) && self.auxiliary.pass
    }
}

type Sides = (Enclosure, Enclosure);

fn chain_sides(p: &TheoremParams, h: usize, prec: u32) -> Result<[Sides; 4]> {
    let k = uint_to_rational(&p.k);
    let t = uint_to_rational(&p.t);
    let ell = uint_to_rational(&p.ell);
    let one_minus = Enclosure::point(Rational::one() - &p.epsilon);
    // (1-ε)^ℓ <= δ compared as logarithms; the power itself needs absurd
    // precision once ℓ is large
    let ln_inv_delta = p.inv_delta.ln(prec)?;
    let lhs1 = one_minus.ln(prec)?.scale(&ell);
    let i = (lhs1, ln_inv_delta.scale(&-Rational::one()));
    let ii = if p.ell.is_zero() {
        (Enclosure::point(rat_int(i64::MAX)), ln_inv_delta)
    } else {
        (Enclosure::point(&k / &ell), ln_inv_delta)
    };
    let iii = (p.inv_delta.clone(), Enclosure::point(rat_int(15) * &t / &k));
    let exp = h.saturating_sub(1) as u64;
    let lhs4 = p.inv_delta.scale(&k).recip().pow(exp);
    let rhs4 = Rational::one() / (rat_int(BigInt::one() << (h + 1)) * crate::exact::rational_pow(&t, exp));
    let iv = (lhs4, Enclosure::point(rhs4));
    Ok([i, ii, iii, iv])
}

const CHECKS: [(&str, &str, Relation); 4] = [
    ("i", "ell ln(1-eps) <= ln(delta)", Relation::LessEq),
    ("ii", "k/ell >= ln(1/delta)", Relation::GreaterEq),
    ("iii", "1/delta > 15t/k", Relation::Greater),
    ("iv", "(delta/k)^(h-1) < 1/(2^(h+1) t^(h-1))", Relation::Less),
];

/// Checks the four chain inequalities (and `2e² < 15`) on `params` for a
/// pattern on `h` vertices. Failures are report content, not errors.
pub fn verify_inequality_chain(params: &TheoremParams, h: usize) -> Result<ChainReport> {
    let mut prec = START_PREC;
    loop {
        let sides = chain_sides(params, h, prec)?;
        let verdicts: Vec<Option<bool>> = sides.iter().zip(CHECKS.iter()).map(|((l, r), (_, _, rel))| rel.decide(l, r)).collect();
        if verdicts.iter().all(Option::is_some) || prec >= MAX_PREC / 4 {
            let checks = sides
                .into_iter()
                .zip(CHECKS)
                .zip(verdicts)
                .map(|(((lhs, rhs), (name, statement, relation)), v)| ChainCheck {
                    name,
                    statement,
                    relation,
                    lhs,
                    rhs,
                    pass: v == Some(true),
                    resolved: v.is_some(),
                })
                .collect();
            let e = e_enclosure(30);
            let lhs = e.pow(2).scale(&rat_int(2));
            let rhs = Enclosure::point(rat_int(15));
            let v = Relation::Less.decide(&lhs, &rhs);
            let auxiliary = ChainCheck { name: "aux", statement: "2e^2 < 15", relation: Relation::Less, lhs, rhs, pass: v == Some(true), resolved: v.is_some() };
            return Ok(ChainReport { h, checks, auxiliary });
        }
        prec *= 2;
    }
}

/// `(1/δ) / (15t/k)`, the multiplicative slack in check (iii).
pub fn margin_iii(params: &TheoremParams) -> Enclosure {
    let rhs = rat_int(15) * uint_to_rational(&params.t) / uint_to_rational(&params.k);
    params.inv_delta.scale(&rhs.recip())
}
