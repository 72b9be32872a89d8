//! Parameter quadruples `(v, k, λ, μ)` of strongly regular graphs.
//!
//! Everything here is exact: eigenvalues are carried as the pair
//! `(λ − μ, Δ)` and only turned into integers when `Δ` is a perfect square.

use std::fmt;

use crate::arith::is_prime_power;
use crate::scalar::{exact_div, exact_sqrt, residue, Scalar};
use crate::{Error, Result};

/// A parameter quadruple. Trivial sets (`μ = 0` or `μ = k`) are representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SrgParams<T> {
    pub v: T,
    pub k: T,
    pub lambda: T,
    pub mu: T,
}

/// Eigenvalue multiplicities as far as they could be determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicities<T> {
    Integral { m1: T, m2: T },
    /// `Δ` is a square but the multiplicity formula is not an integer.
    NonIntegral,
    /// Integral but one of them is negative.
    Negative { m1: T, m2: T },
    /// `Δ` is not a square and the quadruple does not have conference shape.
    NotConference,
}

/// Exact spectrum data of a quadruple satisfying the counting condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum<T> {
    pub delta: T,
    pub sqrt_delta: Option<T>,
    /// `θ₁ + θ₂`.
    pub lambda_minus_mu: T,
    pub multiplicities: Multiplicities<T>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn is_type2(&self) -> bool {
        self.sqrt_delta.is_some()
    }

    /// `θ₁ = ((λ−μ) + √Δ)/2` when integral.
    pub fn theta1(&self) -> Option<T> {
        let s = self.sqrt_delta.as_ref()?;
        Some((self.lambda_minus_mu.clone() + s.clone()) / T::of(2))
    }

    pub fn theta2(&self) -> Option<T> {
        let s = self.sqrt_delta.as_ref()?;
        Some((self.lambda_minus_mu.clone() - s.clone()) / T::of(2))
    }

    /// `(m₁, m₂)` when both are nonnegative integers.
    pub fn m1_m2(&self) -> Option<(T, T)> {
        match &self.multiplicities {
            Multiplicities::Integral { m1, m2 } => Some((m1.clone(), m2.clone())),
            _ => None,
        }
    }
}

/// Whether an abelian group can carry a PDS with the given parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AbelianVerdict {
    /// An abelian PDS has been exhibited and certified.
    Possible,
    Impossible,
    /// No nonexistence argument applies. This never asserts existence.
    Unknown,
}

impl fmt::Display for AbelianVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AbelianVerdict::Possible => "possible",
            AbelianVerdict::Impossible => "impossible",
            AbelianVerdict::Unknown => "unknown",
        })
    }
}

/// The two class-function residues and the verdicts derived from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassResidues<T> {
    pub sqrt_delta: T,
    /// `μ − θ₂(θ₁ + 1)`.
    pub pds_value: T,
    /// `v − 2k + λ − θ₂(θ₁ + 1)`.
    pub complement_value: T,
    pub pds_residue: T,
    pub complement_residue: T,
}

impl<T: Scalar> ClassResidues<T> {
    /// Neither residue vanishes: no group with a nontrivial center carries the PDS.
    pub fn no_nontrivial_center(&self) -> bool {
        !self.pds_residue.is_zero() && !self.complement_residue.is_zero()
    }

    /// At least one residue is nonzero: every PDS with these parameters is genuinely nonabelian.
    pub fn genuinely_nonabelian(&self) -> bool {
        !self.pds_residue.is_zero() || !self.complement_residue.is_zero()
    }
}

/// Identifies the feasibility rule behind an entry of [`FeasibilityVerdict::reasons`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    FirstCondition,
    Trivial,
    Conference,
    TypeII,
    Multiplicity,
    DiscriminantDividesOrder,
    ClassResidue,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::FirstCondition => "first-condition",
            Rule::Trivial => "trivial",
            Rule::Conference => "conference",
            Rule::TypeII => "type-ii",
            Rule::Multiplicity => "multiplicity",
            Rule::DiscriminantDividesOrder => "sqrt-delta-divides-v",
            Rule::ClassResidue => "class-residue",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reason {
    pub rule: Rule,
    pub satisfied: bool,
    pub detail: String,
}

/// Result of running every parameter test on one quadruple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub first_condition: bool,
    pub trivial: bool,
    pub conference: bool,
    pub type2: bool,
    pub multiplicity_integral: bool,
    pub abelian: AbelianVerdict,
    pub genuinely_nonabelian_candidate: bool,
    pub reasons: Vec<Reason>,
}

impl FeasibilityVerdict {
    /// Passes the counting, conference and multiplicity conditions.
    pub fn feasible(&self) -> bool {
        self.first_condition && self.multiplicity_integral
    }

    /// The first rule that rejected the quadruple, in scan order.
    pub fn first_failure(&self) -> Option<&Reason> {
        self.reasons.iter().find(|r| !r.satisfied)
    }
}

impl<T: Scalar> SrgParams<T> {
    pub fn new(v: T, k: T, lambda: T, mu: T) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    pub fn from_i64(v: i64, k: i64, lambda: i64, mu: i64) -> Self {
        Self::new(T::of(v), T::of(k), T::of(lambda), T::of(mu))
    }

    /// Converts to another scalar type, failing if a value does not fit.
    pub fn cast<U: Scalar>(&self) -> Option<SrgParams<U>> {
        let conv = |x: &T| x.to_i128().and_then(U::from_i128);
        Some(SrgParams::new(conv(&self.v)?, conv(&self.k)?, conv(&self.lambda)?, conv(&self.mu)?))
    }

    /// `μ = 0` or `μ = k`.
    pub fn is_trivial(&self) -> bool {
        self.mu.is_zero() || self.mu == self.k
    }

    fn well_formed(&self) -> bool {
        !self.v.is_negative()
            && !self.k.is_negative()
            && !self.lambda.is_negative()
            && !self.mu.is_negative()
            && self.v >= T::one()
    }

    /// `k(k − λ − 1) = (v − k − 1)μ`.
    pub fn check_first_feasibility(&self) -> bool {
        let one = T::one();
        self.well_formed()
            && self.k.clone() * (self.k.clone() - self.lambda.clone() - one.clone())
                == (self.v.clone() - self.k.clone() - one) * self.mu.clone()
    }

    /// The complement's `λ' = v − 2k + μ − 2` and `μ' = v − 2k + λ` are nonnegative.
    pub fn complement_counts_nonnegative(&self) -> bool {
        let c = self.complement_params();
        !c.lambda.is_negative() && !c.mu.is_negative()
    }

    /// `Δ = (λ − μ)² + 4(k − μ)`.
    pub fn delta(&self) -> T {
        let d = self.lambda.clone() - self.mu.clone();
        d.clone() * d + T::of(4) * (self.k.clone() - self.mu.clone())
    }

    pub fn sqrt_delta(&self) -> Option<T> {
        exact_sqrt(&self.delta())
    }

    fn has_paley_shape(&self) -> bool {
        let mu = &self.mu;
        self.v == T::of(4) * mu.clone() + T::one()
            && self.k == T::of(2) * mu.clone()
            && self.lambda.clone() + T::one() == *mu
    }

    /// Exact eigenvalue data. Requires the counting condition.
    pub fn spectrum(&self) -> Result<Spectrum<T>> {
        if !self.check_first_feasibility() {
            return Err(Error::InvalidParams(format!("{self} fails k(k-λ-1) = (v-k-1)μ")));
        }
        let delta = self.delta();
        let lambda_minus_mu = self.lambda.clone() - self.mu.clone();
        let sqrt_delta = exact_sqrt(&delta);
        let vm1 = self.v.clone() - T::one();
        let multiplicities = match &sqrt_delta {
            None if self.has_paley_shape() => {
                let half = vm1.clone() / T::of(2);
                Multiplicities::Integral { m1: half.clone(), m2: half }
            }
            None => Multiplicities::NotConference,
            Some(s) if s.is_zero() => Multiplicities::NonIntegral,
            Some(s) => {
                let num = T::of(2) * self.k.clone() + vm1.clone() * lambda_minus_mu.clone();
                match exact_div(&num, s).and_then(|x| exact_div(&(vm1.clone() - x), &T::of(2))) {
                    None => Multiplicities::NonIntegral,
                    Some(m1) => {
                        let m2 = vm1 - m1.clone();
                        if m1.is_negative() || m2.is_negative() {
                            Multiplicities::Negative { m1, m2 }
                        } else {
                            Multiplicities::Integral { m1, m2 }
                        }
                    }
                }
            }
        };
        Ok(Spectrum { delta, sqrt_delta, lambda_minus_mu, multiplicities })
    }

    /// True iff `Δ` is not a perfect square. A non-square `Δ` without the
    /// conference shape `(4μ+1, 2μ, μ−1, μ)` is an infeasible quadruple.
    pub fn is_conference(&self) -> Result<bool> {
        if !self.check_first_feasibility() {
            return Err(Error::InvalidParams(format!("{self} fails the counting condition")));
        }
        if self.sqrt_delta().is_some() {
            return Ok(false);
        }
        if self.has_paley_shape() {
            Ok(true)
        } else {
            Err(Error::InvalidParams(format!(
                "{self}: Δ = {} is not a square but the parameters are not of conference shape",
                self.delta()
            )))
        }
    }

    /// Parameters of the complementary graph.
    pub fn complement_params(&self) -> Self {
        let two = T::of(2);
        let v = self.v.clone();
        let k = self.k.clone();
        SrgParams {
            v: v.clone(),
            k: v.clone() - k.clone() - T::one(),
            lambda: v.clone() - two.clone() * k.clone() + self.mu.clone() - two.clone(),
            mu: v - two * k + self.lambda.clone(),
        }
    }

    /// Impossible when `√Δ ∤ v`, otherwise unknown. Rejects non-square `Δ`.
    pub fn abelian_type2_test(&self) -> Result<AbelianVerdict> {
        let s = self.sqrt_delta().ok_or_else(|| {
            Error::Inapplicable(format!("{self} has non-square Δ = {}", self.delta()))
        })?;
        if s.is_zero() {
            return Err(Error::Inapplicable(format!("{self} has Δ = 0")));
        }
        Ok(if exact_div(&self.v, &s).is_some() {
            AbelianVerdict::Unknown
        } else {
            AbelianVerdict::Impossible
        })
    }

    /// `μ − θ₂(θ₁+1)` and `v − 2k + λ − θ₂(θ₁+1)` with their residues mod `√Δ`.
    pub fn class_residues(&self) -> Result<ClassResidues<T>> {
        let spec = self.spectrum()?;
        let s = spec.sqrt_delta.clone().ok_or_else(|| {
            Error::Inapplicable(format!("{self} is a conference quadruple"))
        })?;
        if s.is_zero() {
            return Err(Error::Inapplicable(format!("{self} has Δ = 0")));
        }
        let t1 = spec.theta1().expect("type II");
        let t2 = spec.theta2().expect("type II");
        let shift = t2 * (t1 + T::one());
        let pds_value = self.mu.clone() - shift.clone();
        let complement_value = self.v.clone() - T::of(2) * self.k.clone() + self.lambda.clone() - shift;
        Ok(ClassResidues {
            pds_residue: residue(&pds_value, &s),
            complement_residue: residue(&complement_value, &s),
            sqrt_delta: s,
            pds_value,
            complement_value,
        })
    }

    /// Runs every test in order: counting condition, conference/type II,
    /// multiplicities, then the abelian nonexistence tests.
    pub fn feasibility(&self) -> FeasibilityVerdict {
        let mut reasons = Vec::new();
        let mut verdict = FeasibilityVerdict {
            first_condition: false,
            trivial: self.is_trivial(),
            conference: false,
            type2: false,
            multiplicity_integral: false,
            abelian: AbelianVerdict::Unknown,
            genuinely_nonabelian_candidate: false,
            reasons: Vec::new(),
        };
        let one = T::one();
        let lhs = self.k.clone() * (self.k.clone() - self.lambda.clone() - one.clone());
        let rhs = (self.v.clone() - self.k.clone() - one) * self.mu.clone();
        let counting = self.check_first_feasibility();
        let complement_ok = self.complement_counts_nonnegative();
        verdict.first_condition = counting && complement_ok;
        let mut detail = format!("k(k-λ-1) = {lhs}, (v-k-1)μ = {rhs}");
        if counting && !complement_ok {
            let c = self.complement_params();
            detail.push_str(&format!("; complement {c} has a negative count"));
        }
        reasons.push(Reason { rule: Rule::FirstCondition, satisfied: verdict.first_condition, detail });
        if !verdict.first_condition {
            verdict.abelian = AbelianVerdict::Impossible;
            verdict.reasons = reasons;
            return verdict;
        }
        if verdict.trivial {
            reasons.push(Reason {
                rule: Rule::Trivial,
                satisfied: true,
                detail: format!("μ = {} (trivial: disjoint cliques or complement)", self.mu),
            });
        }
        let spec = self.spectrum().expect("counting condition checked");
        match &spec.sqrt_delta {
            Some(s) => {
                verdict.type2 = true;
                reasons.push(Reason {
                    rule: Rule::TypeII,
                    satisfied: true,
                    detail: format!("Δ = {} = {s}²", spec.delta),
                });
            }
            None => {
                let shaped = self.has_paley_shape();
                verdict.conference = shaped;
                reasons.push(Reason {
                    rule: Rule::Conference,
                    satisfied: shaped,
                    detail: if shaped {
                        format!("Δ = {} not a square, conference shape", spec.delta)
                    } else {
                        format!("Δ = {} not a square and not conference shape", spec.delta)
                    },
                });
            }
        }
        match &spec.multiplicities {
            Multiplicities::Integral { m1, m2 } => {
                verdict.multiplicity_integral = true;
                reasons.push(Reason {
                    rule: Rule::Multiplicity,
                    satisfied: true,
                    detail: format!("m1 = {m1}, m2 = {m2}"),
                });
            }
            Multiplicities::NonIntegral => reasons.push(Reason {
                rule: Rule::Multiplicity,
                satisfied: false,
                detail: "m1 is not an integer".into(),
            }),
            Multiplicities::Negative { m1, m2 } => reasons.push(Reason {
                rule: Rule::Multiplicity,
                satisfied: false,
                detail: format!("negative multiplicity: m1 = {m1}, m2 = {m2}"),
            }),
            Multiplicities::NotConference => {}
        }
        if !verdict.feasible() {
            verdict.abelian = AbelianVerdict::Impossible;
            verdict.reasons = reasons;
            return verdict;
        }
        if verdict.type2 && !verdict.trivial {
            if let Ok(ab) = self.abelian_type2_test() {
                let s = spec.sqrt_delta.clone().expect("type II");
                reasons.push(Reason {
                    rule: Rule::DiscriminantDividesOrder,
                    satisfied: ab != AbelianVerdict::Impossible,
                    detail: format!("v/√Δ = {}/{s}", self.v),
                });
                if ab == AbelianVerdict::Impossible {
                    verdict.abelian = AbelianVerdict::Impossible;
                }
            }
            if let Ok(res) = self.class_residues() {
                let gn = res.genuinely_nonabelian();
                reasons.push(Reason {
                    rule: Rule::ClassResidue,
                    satisfied: !gn,
                    detail: format!(
                        "μ-θ2(θ1+1) = {} ≡ {}, v-2k+λ-θ2(θ1+1) = {} ≡ {} (mod {})",
                        res.pds_value, res.pds_residue, res.complement_value, res.complement_residue, res.sqrt_delta
                    ),
                });
                if gn {
                    verdict.abelian = AbelianVerdict::Impossible;
                }
            }
        }
        verdict.genuinely_nonabelian_candidate =
            !verdict.trivial && verdict.abelian == AbelianVerdict::Impossible;
        verdict.reasons = reasons;
        verdict
    }
}

impl<T: fmt::Display> fmt::Display for SrgParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

impl<T: Scalar> std::str::FromStr for SrgParams<T> {
    type Err = Error;

    /// Parses `v,k,l,m`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::InvalidParams(format!("expected v,k,l,m, got {s:?}")));
        }
        let mut vals = Vec::with_capacity(4);
        for p in parts {
            let x: i64 = p
                .parse()
                .map_err(|_| Error::InvalidParams(format!("not an integer: {p:?}")))?;
            vals.push(T::of(x));
        }
        let mu = vals.pop().unwrap();
        let lambda = vals.pop().unwrap();
        let k = vals.pop().unwrap();
        let v = vals.pop().unwrap();
        Ok(SrgParams { v, k, lambda, mu })
    }
}

/// Parameters of the triangular graph `T_n`.
pub fn triangular_params<T: Scalar>(n: i64) -> Result<SrgParams<T>> {
    if n < 5 {
        return Err(Error::InvalidParams(format!("triangular graph needs n >= 5, got {n}")));
    }
    let n = T::of(n);
    let two = T::of(2);
    Ok(SrgParams {
        v: n.clone() * (n.clone() - T::one()) / two.clone(),
        k: two.clone() * (n.clone() - two.clone()),
        lambda: n - two,
        mu: T::of(4),
    })
}

/// The Krein-cover family of order `q³` indexed by a divisor `r` of `q + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GodsilParams<T> {
    pub params: SrgParams<T>,
    /// `q(q+1)/r`.
    pub sqrt_delta: T,
    /// `r = 1` gives the complete graph.
    pub trivial: bool,
    pub genuinely_nonabelian: bool,
}

pub fn godsil_params<T: Scalar>(q: u64, r: u64) -> Result<GodsilParams<T>> {
    if !is_prime_power(q) {
        return Err(Error::InvalidParams(format!("q = {q} is not a prime power")));
    }
    if r == 0 || r > q || !(q + 1).is_multiple_of(r) {
        return Err(Error::InvalidParams(format!("r = {r} must be a divisor of q+1 = {} below it", q + 1)));
    }
    let qq = T::of(q as i64);
    let rr = T::of(r as i64);
    let one = T::one();
    let n = (qq.clone() + one.clone()) / rr.clone(); // (q+1)/r
    let w = (qq.clone() + one.clone()) * (qq.clone() + one.clone()) / rr.clone() - qq.clone();
    let nm1 = n.clone() - one.clone();
    let params = SrgParams {
        v: qq.clone() * qq.clone() * qq.clone(),
        k: (qq.clone() - one.clone()) * w.clone(),
        lambda: rr.clone() * nm1.clone() * nm1.clone() * nm1.clone() + rr - T::of(3),
        mu: nm1 * w,
    };
    Ok(GodsilParams {
        params,
        sqrt_delta: qq * n.clone(),
        trivial: r == 1,
        genuinely_nonabelian: r > 1 || n > one,
    })
}

/// Named parameter families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `(4μ+1, 2μ, μ−1, μ)`.
    Paley { mu: i64 },
    /// Positive Latin square type `PL_m(r)`.
    LatinSquarePl { m: i64, r: i64 },
    /// Negative Latin square type `NL_m(r)`.
    LatinSquareNl { m: i64, r: i64 },
    /// Point graph of a generalized quadrangle of order `(s, t)`.
    GqPoint { s: i64, t: i64 },
    /// `(q³, q²+q−2, q−2, q+2)`.
    Payne { q: i64 },
}

impl Family {
    /// Parses a family name and its integer arguments.
    pub fn parse(name: &str, args: &[i64]) -> Result<Self> {
        let want = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("family {name} takes {n} arguments, got {}", args.len())))
            }
        };
        match name {
            "paley" => want(1).map(|_| Family::Paley { mu: args[0] }),
            "latin_square_pl" | "pl" => want(2).map(|_| Family::LatinSquarePl { m: args[0], r: args[1] }),
            "latin_square_nl" | "nl" => want(2).map(|_| Family::LatinSquareNl { m: args[0], r: args[1] }),
            "gq_point" | "gq" => want(2).map(|_| Family::GqPoint { s: args[0], t: args[1] }),
            "payne" => want(1).map(|_| Family::Payne { q: args[0] }),
            _ => Err(Error::InvalidParams(format!("unknown family {name:?}"))),
        }
    }
}

pub fn catalog_params<T: Scalar>(family: Family) -> Result<SrgParams<T>> {
    let p = |v: i64, k: i64, l: i64, m: i64| SrgParams::from_i64(v, k, l, m);
    match family {
        Family::Paley { mu } if mu >= 1 => Ok(p(4 * mu + 1, 2 * mu, mu - 1, mu)),
        Family::LatinSquarePl { m, r } if m >= 2 && r >= 1 && r <= m => {
            Ok(p(m * m, r * (m - 1), r * r - 3 * r + m, r * (r - 1)))
        }
        Family::LatinSquareNl { m, r } if m >= 2 && r >= 1 => {
            Ok(p(m * m, r * (m + 1), r * r + 3 * r - m, r * (r + 1)))
        }
        Family::GqPoint { s, t } if s >= 1 && t >= 1 => {
            Ok(p((s + 1) * (s * t + 1), s * (t + 1), s - 1, t + 1))
        }
        Family::Payne { q } if q >= 2 => Ok(p(q * q * q, q * q + q - 2, q - 2, q + 2)),
        f => Err(Error::InvalidParams(format!("malformed family arguments {f:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = SrgParams<i64>;

    fn p(v: i64, k: i64, l: i64, m: i64) -> P {
        P::from_i64(v, k, l, m)
    }

    #[test]
    fn first_feasibility_examples() {
        assert!(p(21, 10, 5, 4).check_first_feasibility());
        assert!(p(27, 10, 1, 5).check_first_feasibility());
        assert!(!p(10, 3, 1, 1).check_first_feasibility());
    }

    #[test]
    fn spectrum_of_t7() {
        let s = p(21, 10, 5, 4).spectrum().unwrap();
        assert_eq!(s.delta, 25);
        assert_eq!(s.theta1(), Some(3));
        assert_eq!(s.theta2(), Some(-2));
        assert_eq!(s.m1_m2(), Some((6, 14)));
    }

    #[test]
    fn spectrum_of_512() {
        let s = p(512, 133, 24, 38).spectrum().unwrap();
        assert_eq!(s.sqrt_delta, Some(24));
        assert_eq!(s.theta1(), Some(5));
        assert_eq!(s.theta2(), Some(-19));
    }

    #[test]
    fn spectrum_of_27() {
        // Solve 1+m1+m2 = 27, 10 + m1 - 5 m2 = 0 by hand: m2 = 6, m1 = 20.
        let s = p(27, 10, 1, 5).spectrum().unwrap();
        assert_eq!(s.sqrt_delta, Some(6));
        assert_eq!((s.theta1(), s.theta2()), (Some(1), Some(-5)));
        assert_eq!(s.m1_m2(), Some((20, 6)));
        assert_eq!(10 + 20 - 5 * 6, 0);
    }

    #[test]
    fn spectrum_distinguishes_failures() {
        // (v,k,λ,μ) = (28,9,0,4): counting holds (9·8 = 18·4), Δ = 36, m1 = (27 - (18-108)/6)/2 = 21, m2 = 6: fine.
        assert!(p(28, 9, 0, 4).spectrum().unwrap().m1_m2().is_some());
        // (16,9,4,6): 9·4 = 6·6, Δ = 4+12 = 16, m1 = (15 - (18-30)/4)/2 = 9: integral.
        assert!(p(16, 9, 4, 6).spectrum().unwrap().m1_m2().is_some());
        // (21,10,4,5) has the conference shape; (9,4,0,3): 4·3 = 4·3, Δ = 9+4 = 13 non-square, not that shape.
        assert!(p(21, 10, 4, 5).is_conference().unwrap());
        let s = p(9, 4, 0, 3).spectrum().unwrap();
        assert_eq!(s.multiplicities, Multiplicities::NotConference);
        assert!(p(9, 4, 0, 3).is_conference().is_err());
        // (65,32,15,16) is conference shape (4·16+1).
        assert!(p(65, 32, 15, 16).is_conference().unwrap());
        assert!(p(10, 3, 1, 1).spectrum().is_err());
    }

    #[test]
    fn non_integral_multiplicity() {
        // (76,21,2,7): 21·18 = 54·7 = 378, Δ = 25 + 56 = 81, √Δ = 9,
        // (2k + (v-1)(λ-μ))/9 = (42 - 375)/9 = -37, m1 = (75 + 37)/2 = 56. Integral.
        assert!(p(76, 21, 2, 7).spectrum().unwrap().m1_m2().is_some());
        // (10,4,0,2): 4·3 = 5·2? 12 ≠ 10, skip. (15,4,1,1): 4·2 = 10·1? no.
        // (50,21,4,12): 21·16 = 336, 28·12 = 336; Δ = 64+36 = 100, √Δ = 10;
        // (42 + 49·(-8))/10 = -35, m1 = (49+35)/2 = 42; m2 = 7. Integral.
        assert!(p(50, 21, 4, 12).spectrum().unwrap().m1_m2().is_some());
        // (40,13,0,6): 13·12 = 156, 26·6 = 156; Δ = 36 + 28 = 64, √Δ = 8;
        // (26 + 39·(-6))/8 = -208/8 = -26, m1 = (39 + 26)/2 = 32.5: non-integral.
        let s = p(40, 13, 0, 6).spectrum().unwrap();
        assert_eq!(s.multiplicities, Multiplicities::NonIntegral);
        let f = p(40, 13, 0, 6).feasibility();
        assert!(!f.feasible());
        assert_eq!(f.first_failure().unwrap().rule, Rule::Multiplicity);
    }

    #[test]
    fn conference_examples() {
        assert!(p(13, 6, 2, 3).is_conference().unwrap());
        assert_eq!(p(13, 6, 2, 3).delta(), 13);
        assert!(p(5, 2, 0, 1).is_conference().unwrap());
        assert!(!p(21, 10, 5, 4).is_conference().unwrap());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(p(21, 10, 5, 4).complement_params(), p(21, 10, 3, 6));
        assert_eq!(p(27, 10, 1, 5).complement_params(), p(27, 16, 10, 8));
        let x = p(512, 133, 24, 38);
        assert_eq!(x.complement_params().complement_params(), x);
    }

    #[test]
    fn abelian_test_examples() {
        assert_eq!(p(21, 10, 5, 4).abelian_type2_test().unwrap(), AbelianVerdict::Impossible);
        assert_eq!(p(512, 133, 24, 38).abelian_type2_test().unwrap(), AbelianVerdict::Impossible);
        assert_eq!(p(16, 6, 2, 2).abelian_type2_test().unwrap(), AbelianVerdict::Unknown);
        assert!(matches!(p(13, 6, 2, 3).abelian_type2_test(), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn triangular_examples() {
        assert_eq!(triangular_params::<i64>(7).unwrap(), p(21, 10, 5, 4));
        assert_eq!(triangular_params::<i64>(5).unwrap(), p(10, 6, 3, 4));
        assert_eq!(triangular_params::<i64>(11).unwrap(), p(55, 18, 9, 4));
        assert!(triangular_params::<i64>(4).is_err());
    }

    #[test]
    fn godsil_examples() {
        assert_eq!(godsil_params::<i64>(3, 2).unwrap().params, p(27, 10, 1, 5));
        let g = godsil_params::<i64>(8, 3).unwrap();
        assert_eq!(g.params, p(512, 133, 24, 38));
        assert_eq!(g.sqrt_delta, 24);
        let g = godsil_params::<i64>(5, 2).unwrap();
        assert_eq!(g.params, p(125, 52, 15, 26));
        assert_eq!(g.params.delta(), 225);
        assert_eq!(g.sqrt_delta * g.sqrt_delta, 225);
        assert!(godsil_params::<i64>(6, 7).is_err());
        assert!(godsil_params::<i64>(5, 4).is_err());
        assert!(godsil_params::<i64>(5, 6).is_err());
        let t = godsil_params::<i64>(5, 1).unwrap();
        assert!(t.trivial);
        assert_eq!(t.params.k, t.params.v - 1);
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(catalog_params::<i64>(Family::Paley { mu: 3 }).unwrap(), p(13, 6, 2, 3));
        assert_eq!(catalog_params::<i64>(Family::GqPoint { s: 2, t: 2 }).unwrap(), p(15, 6, 1, 3));
        assert_eq!(catalog_params::<i64>(Family::Payne { q: 3 }).unwrap(), p(27, 10, 1, 5));
        assert!(Family::parse("paley", &[1, 2]).is_err());
        assert!(Family::parse("nope", &[1]).is_err());
        for (m, r) in [(4, 2), (5, 2), (6, 3)] {
            assert!(catalog_params::<i64>(Family::LatinSquarePl { m, r }).unwrap().check_first_feasibility());
            assert!(catalog_params::<i64>(Family::LatinSquareNl { m, r }).unwrap().check_first_feasibility());
        }
    }

    #[test]
    fn class_residue_examples() {
        let r = p(27, 10, 1, 5).class_residues().unwrap();
        assert_eq!((r.pds_value, r.complement_value), (15, 18));
        assert_eq!((r.pds_residue, r.complement_residue), (3, 0));
        assert!(r.genuinely_nonabelian());
        assert!(!r.no_nontrivial_center());
        assert_eq!(p(512, 133, 24, 38).class_residues().unwrap().pds_value, 152);
        let r = p(21, 10, 5, 4).class_residues().unwrap();
        assert_eq!((r.pds_value, r.pds_residue), (12, 2));
        assert!(p(13, 6, 2, 3).class_residues().is_err());
    }

    #[test]
    fn bigint_and_i64_agree() {
        let big: SrgParams<BigInt> = SrgParams::from_i64(512, 133, 24, 38);
        let s = big.spectrum().unwrap();
        assert_eq!(s.theta2(), Some(BigInt::from(-19)));
        assert_eq!(big.class_residues().unwrap().pds_value, BigInt::from(152));
    }

    #[test]
    fn million_vertex_params_do_not_overflow() {
        // T_n with v near 10⁶: n = 1415 gives v = 1000405.
        let t: P = triangular_params(1415).unwrap();
        let s = t.spectrum().unwrap();
        assert_eq!(s.m1_m2(), Some((1414, 1415 * 1412 / 2)));
        assert_eq!(t.abelian_type2_test().unwrap(), AbelianVerdict::Impossible);
    }

    #[test]
    fn parse_params() {
        let x: P = "21,10,5,4".parse().unwrap();
        assert_eq!(x, p(21, 10, 5, 4));
        let x: P = "(27, 10, 1, 5)".parse().unwrap();
        assert_eq!(x, p(27, 10, 1, 5));
        assert!("1,2,3".parse::<P>().is_err());
    }

    #[test]
    fn feasibility_verdicts() {
        let f = p(21, 10, 5, 4).feasibility();
        assert!(f.feasible() && f.type2 && f.genuinely_nonabelian_candidate);
        assert_eq!(f.abelian, AbelianVerdict::Impossible);
        let f = p(16, 6, 2, 2).feasibility();
        assert!(f.feasible());
        assert_eq!(f.abelian, AbelianVerdict::Unknown);
        let f = p(13, 6, 2, 3).feasibility();
        assert!(f.conference && f.feasible());
        assert_eq!(f.abelian, AbelianVerdict::Unknown);
        let f = p(10, 3, 1, 1).feasibility();
        assert!(!f.first_condition);
        assert_eq!(f.first_failure().unwrap().rule, Rule::FirstCondition);
    }
}
