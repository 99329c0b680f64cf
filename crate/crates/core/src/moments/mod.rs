//! Moments of Lévy areas from sticky shuffle powers.
//!
//! The `n`-th moment of an area `c·J(E)`, where `E` is a rank-two element and
//! `c` a constant prefactor, is `cⁿ wₙ (b−a)ⁿ / n!`, with `wₙ` the coefficient
//! of `dT⊗⋯⊗dT` in the `n`-th sticky power of `E`. Every other word has zero
//! expectation.
//!
//! `wₙ` is available four ways: directly from the tensor algebra
//! ([`w_hopf`]), through iterated coproducts ([`w_recovery`]), as a double
//! sum over permutations ([`w_oracle`]), and in closed form ([`w_closed`]).
//! The last two only describe the normalized quantum area.

mod closed;
mod oracle;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::ito_algebra::{Builtin, ItoAlgebra};
use crate::scalar::{fmt_rational, parse_rational, GaussianRational, Scalar, ScalarTermJson};
use crate::tensor_hopf::{
    iterated_coproduct, multi_product_truncated, power_truncated, MultiTensorElement, TensorElement, Word,
};

pub use closed::{classical_moments, sech_taylor, w_closed};
pub use oracle::{
    inner_sum, inner_sum_by_type, inner_sum_cyclic, trim_poly, w_oracle, w_oracle_presubstitution,
    w_oracle_with_limit, ORACLE_LIMIT, ORACLE_LIMIT_EXTENDED,
};

/// Which area an [`AreaWord`] describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AreaKind {
    /// `i J(dÂ⊗dÂ† − dÂ†⊗dÂ)`, symbolic in `σ₊`, `σ₋`.
    NormalizedQuantum,
    /// `i J(dZ⊗dZ̄ − dZ̄⊗dZ)`
    ClassicalZ,
    /// `½ J(dX⊗dY − dY⊗dX)`
    ClassicalPlanar,
    /// `½ J(dP⊗dQ − dQ⊗dP)` at a fixed `σ²`.
    QuantumPQ(BigRational),
    /// `i J(dA⊗dA† − dA†⊗dA)` at a fixed `σ²`.
    QuantumA(BigRational),
}

/// A rank-two area element together with its constant prefactor.
#[derive(Clone, Debug)]
pub struct AreaWord {
    kind: AreaKind,
    element: TensorElement,
    prefactor: GaussianRational,
}

impl AreaWord {
    fn build(kind: AreaKind, builtin: Builtin, sigma_sq: Option<&BigRational>, prefactor: GaussianRational) -> Result<Self> {
        let alg = Arc::new(builtin.algebra(sigma_sq)?);
        let (l, r) = (alg.label_name(0).to_string(), alg.label_name(1).to_string());
        let element = TensorElement::word(&alg, &[&l, &r])?.sub(&TensorElement::word(&alg, &[&r, &l])?)?;
        Ok(AreaWord { kind, element, prefactor })
    }

    /// The normalized quantum Lévy area over the `dÂ`, `dÂ†` table.
    pub fn normalized_quantum() -> Self {
        Self::build(AreaKind::NormalizedQuantum, Builtin::QuantumAhat, None, GaussianRational::i())
            .expect("built-in table")
    }

    pub fn classical_z() -> Self {
        Self::build(AreaKind::ClassicalZ, Builtin::ClassicalZ, None, GaussianRational::i()).expect("built-in table")
    }

    pub fn classical_planar() -> Self {
        Self::build(AreaKind::ClassicalPlanar, Builtin::ClassicalPlanar, None, GaussianRational::ratio(1, 2))
            .expect("built-in table")
    }

    pub fn quantum_pq(sigma_sq: BigRational) -> Result<Self> {
        Self::build(AreaKind::QuantumPQ(sigma_sq.clone()), Builtin::QuantumPQ, Some(&sigma_sq), GaussianRational::ratio(1, 2))
    }

    pub fn quantum_a(sigma_sq: BigRational) -> Result<Self> {
        Self::build(AreaKind::QuantumA(sigma_sq.clone()), Builtin::QuantumA, Some(&sigma_sq), GaussianRational::i())
    }

    pub fn kind(&self) -> &AreaKind {
        &self.kind
    }

    pub fn element(&self) -> &TensorElement {
        &self.element
    }

    pub fn algebra(&self) -> &Arc<ItoAlgebra> {
        self.element.algebra()
    }

    pub fn prefactor(&self) -> &GaussianRational {
        &self.prefactor
    }

    /// A short name used in reports.
    pub fn name(&self) -> &'static str {
        match self.kind {
            AreaKind::NormalizedQuantum => "normalized",
            AreaKind::ClassicalZ => "classicalZ",
            AreaKind::ClassicalPlanar => "classicalPlanar",
            AreaKind::QuantumPQ(_) => "quantumPQ",
            AreaKind::QuantumA(_) => "quantumA",
        }
    }
}

impl Default for AreaWord {
    fn default() -> Self {
        Self::normalized_quantum()
    }
}

/// Whether a word survives expectation: only pure time words do. The empty
/// word qualifies vacuously.
pub fn expectation_rule(algebra: &ItoAlgebra, word: &Word) -> bool {
    word.letters().iter().all(|&l| l == algebra.time_index())
}

fn time_word(algebra: &ItoAlgebra, n: usize) -> Word {
    Word(vec![algebra.time_index(); n])
}

/// `wₙ` read off the `n`-th sticky power of the area element. Words of rank
/// above `n` are dropped during the computation; they cannot feed back into
/// rank `n`.
pub fn w_hopf(area: &AreaWord, n: usize) -> Scalar {
    let p = power_truncated(&area.element, n, n);
    p.coefficient(&time_word(area.algebra(), n))
}

/// `wₙ` through the recovery formula: the all-ones multirank component of
/// `(Δ⁽ⁿ⁾E)ⁿ`, with every slot kept at rank `≤ 1`.
pub fn w_recovery(area: &AreaWord, n: usize) -> Scalar {
    if n == 0 {
        return Scalar::one();
    }
    let alg = area.algebra();
    let full = iterated_coproduct(&area.element, n);
    let base = MultiTensorElement::from_terms(
        alg,
        n,
        full.terms().filter(|(ws, _)| ws.iter().all(|w| w.rank() <= 1)).map(|(ws, c)| (ws.clone(), c.clone())),
    )
    .expect("terms come from a valid element");
    let mut acc = MultiTensorElement::unit(alg, n);
    for _ in 0..n {
        acc = multi_product_truncated(&acc, &base, 1).expect("same algebra and arity");
    }
    let t = Word(vec![alg.time_index()]);
    acc.coefficient(&vec![t; n])
}

/// How `wₙ` is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Hopf,
    Recovery,
    Oracle,
    Closed,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Hopf, Method::Recovery, Method::Oracle, Method::Closed];

    pub fn name(self) -> &'static str {
        match self {
            Method::Hopf => "hopf",
            Method::Recovery => "recovery",
            Method::Oracle => "oracle",
            Method::Closed => "closed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("unknown method `{s}`; expected hopf, recovery, oracle or closed"),
        })
    }
}

/// `wₙ` by the chosen method. The oracle honours `oracle_limit`.
pub fn w_by_method(area: &AreaWord, n: usize, method: Method, oracle_limit: usize) -> Result<Scalar> {
    let normalized_only = |method: Method| {
        if area.kind == AreaKind::NormalizedQuantum {
            Ok(())
        } else {
            Err(Error::MethodUnavailable {
                method: method.name().to_string(),
                reason: format!("it describes the normalized quantum area, not `{}`", area.name()),
            })
        }
    };
    match method {
        Method::Hopf => Ok(w_hopf(area, n)),
        Method::Recovery => Ok(w_recovery(area, n)),
        Method::Oracle => {
            normalized_only(method)?;
            w_oracle_with_limit(n, oracle_limit)
        }
        Method::Closed => {
            normalized_only(method)?;
            Ok(if n % 2 == 1 { Scalar::zero() } else { w_closed(n / 2) })
        }
    }
}

/// The variance parameter of the quantum area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sigma {
    /// Keep `σ₊`, `σ₋` as indeterminates.
    Symbolic,
    /// The classical limit `σ → ∞`, i.e. `σ± = ½`.
    Infinity,
    /// A rational `σ ≥ 1`, giving `σ± = ½(1 ± σ⁻²)`.
    Value(BigRational),
}

impl Sigma {
    /// `(σ₊, σ₋)`, or `None` when symbolic.
    pub fn weights(&self) -> Result<Option<(GaussianRational, GaussianRational)>> {
        let half = BigRational::new(1.into(), 2.into());
        match self {
            Sigma::Symbolic => Ok(None),
            Sigma::Infinity => Ok(Some((half.clone().into(), half.into()))),
            Sigma::Value(s) => {
                if *s < BigRational::one() {
                    return Err(Error::InvalidSigma(fmt_rational(s)));
                }
                let inv = (s * s).recip();
                Ok(Some(((&half * (BigRational::one() + &inv)).into(), (&half * (BigRational::one() - &inv)).into())))
            }
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Symbolic => f.write_str("symbolic"),
            Sigma::Infinity => f.write_str("inf"),
            Sigma::Value(s) => f.write_str(&fmt_rational(s)),
        }
    }
}

impl FromStr for Sigma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sigma> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Sigma::Infinity),
            "symbolic" | "sym" => Ok(Sigma::Symbolic),
            v => {
                let r = parse_rational(v)?;
                if r < BigRational::one() {
                    return Err(Error::InvalidSigma(v.to_string()));
                }
                Ok(Sigma::Value(r))
            }
        }
    }
}

/// The result of one moment computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub order: usize,
    pub method: Method,
    pub w: Scalar,
    pub a: BigRational,
    pub b: BigRational,
    pub sigma: Sigma,
    /// A constant unless `sigma` is symbolic.
    pub moment: Scalar,
}

/// JSON layout of a [`MomentReport`]. `moment` is a string such as `"5/16"`
/// when evaluated and a list of scalar terms when symbolic.
#[derive(Serialize)]
pub struct MomentReportJson {
    pub order: usize,
    pub method: String,
    pub w: Vec<ScalarTermJson>,
    pub a: String,
    pub b: String,
    pub sigma: String,
    pub moment: MomentJson,
}

/// An evaluated moment as a rational string, or a symbolic one as terms.
#[derive(Serialize)]
#[serde(untagged)]
pub enum MomentJson {
    Value(String),
    Symbolic(Vec<ScalarTermJson>),
}

impl MomentReport {
    pub fn to_json(&self) -> MomentReportJson {
        let moment = match self.moment.as_constant() {
            Some(c) if self.sigma != Sigma::Symbolic => MomentJson::Value(c.to_string()),
            _ => MomentJson::Symbolic(self.moment.to_json()),
        };
        MomentReportJson {
            order: self.order,
            method: self.method.name().to_string(),
            w: self.w.to_json(),
            a: fmt_rational(&self.a),
            b: fmt_rational(&self.b),
            sigma: self.sigma.to_string(),
            moment,
        }
    }

    /// Decimal rendering of an evaluated real moment, rounded to `digits`
    /// places. `None` for symbolic or non-real values.
    pub fn moment_decimal(&self, digits: usize) -> Option<String> {
        let c = self.moment.as_constant()?;
        if !c.is_real() {
            return None;
        }
        Some(decimal(&c.re, digits))
    }
}

/// Rounds a rational half away from zero to `digits` decimal places.
pub fn decimal(r: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let (int, frac) = (&rounded / &scale, &rounded % &scale);
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// The `n`-th moment `cⁿ wₙ (b−a)ⁿ / n!` of the area over `[a, b)`. Order 0
/// gives 1.
pub fn moment(
    area: &AreaWord,
    n: usize,
    a: &BigRational,
    b: &BigRational,
    sigma: &Sigma,
    method: Method,
) -> Result<MomentReport> {
    moment_with_limit(area, n, a, b, sigma, method, ORACLE_LIMIT)
}

/// [`moment`] with an explicit oracle order limit.
pub fn moment_with_limit(
    area: &AreaWord,
    n: usize,
    a: &BigRational,
    b: &BigRational,
    sigma: &Sigma,
    method: Method,
    oracle_limit: usize,
) -> Result<MomentReport> {
    if a >= b {
        return Err(Error::InvalidInterval { a: fmt_rational(a), b: fmt_rational(b) });
    }
    let weights = sigma.weights()?;
    let w = w_by_method(area, n, method, oracle_limit)?;
    let len = GaussianRational::real(b - a).pow(n as u32);
    let nfact = GaussianRational::real(BigRational::from_integer(factorial(n).into()));
    let scale = &(&area.prefactor.pow(n as u32) * &len) / &nfact;
    let symbolic = w.scale(&scale);
    let moment = match weights {
        None => symbolic,
        Some((sp, sm)) => Scalar::constant(symbolic.evaluate(&sp, &sm)),
    };
    Ok(MomentReport { order: n, method, w, a: a.clone(), b: b.clone(), sigma: sigma.clone(), moment })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn hopf_small_orders() {
        let area = AreaWord::normalized_quantum();
        assert_eq!(w_hopf(&area, 0), Scalar::one());
        assert_eq!(w_hopf(&area, 1), Scalar::zero());
        assert_eq!(w_hopf(&area, 2), "-2 s+ s-".parse().unwrap());
        assert_eq!(w_recovery(&area, 2), w_hopf(&area, 2));
    }

    #[test]
    fn symbolic_second_moment() {
        let area = AreaWord::normalized_quantum();
        let r = moment(&area, 2, &q(0, 1), &q(3, 1), &Sigma::Symbolic, Method::Hopf).unwrap();
        assert_eq!(r.moment, "9 s+ s-".parse().unwrap());
    }

    #[test]
    fn evaluated_moments() {
        let area = AreaWord::normalized_quantum();
        let (zero, one) = (q(0, 1), q(1, 1));
        let m = |n, s: &Sigma| moment(&area, n, &zero, &one, s, Method::Hopf).unwrap().moment;
        assert_eq!(m(2, &Sigma::Infinity), Scalar::ratio(1, 4));
        assert_eq!(m(3, &Sigma::Infinity), Scalar::zero());
        assert_eq!(m(2, &Sigma::Value(q(1, 1))), Scalar::zero());
        assert_eq!(m(2, &Sigma::Value(q(2, 1))), Scalar::ratio(15, 64));
        assert_eq!(m(0, &Sigma::Value(q(1, 1))), Scalar::one());
    }

    #[test]
    fn bad_parameters() {
        let area = AreaWord::normalized_quantum();
        let r = moment(&area, 2, &q(1, 1), &q(1, 1), &Sigma::Infinity, Method::Hopf);
        assert!(matches!(r, Err(Error::InvalidInterval { .. })));
        assert!(matches!("1/2".parse::<Sigma>(), Err(Error::InvalidSigma(_))));
        let r = moment(&AreaWord::classical_planar(), 2, &q(0, 1), &q(1, 1), &Sigma::Infinity, Method::Oracle);
        assert!(matches!(r, Err(Error::MethodUnavailable { .. })));
    }

    #[test]
    fn expectation_rule_words() {
        let area = AreaWord::normalized_quantum();
        let alg = area.algebra();
        let t = alg.time_index();
        assert!(expectation_rule(alg, &Word(vec![t, t])));
        assert!(!expectation_rule(alg, &Word(vec![t, 0])));
        assert!(expectation_rule(alg, &Word::empty()));
    }

    #[test]
    fn report_json_layout() {
        let area = AreaWord::normalized_quantum();
        let r = moment(&area, 4, &q(0, 1), &q(1, 1), &Sigma::Infinity, Method::Closed).unwrap();
        let j = serde_json::to_string(&r.to_json()).unwrap();
        assert!(j.starts_with(r#"{"order":4,"method":"closed","w":["#), "{j}");
        assert!(j.ends_with(r#""a":"0","b":"1","sigma":"inf","moment":"5/16"}"#), "{j}");
        assert_eq!(r.moment_decimal(4).as_deref(), Some("0.3125"));
    }

    #[test]
    fn decimals_round() {
        assert_eq!(decimal(&q(2, 3), 3), "0.667");
        assert_eq!(decimal(&q(-1, 8), 2), "-0.13");
        assert_eq!(decimal(&q(5, 1), 0), "5");
    }
}
