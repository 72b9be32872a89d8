//! Arithmetic in GF(p^d).
//!
//! Elements are stored packed: the coefficient vector `(c₀, …, c_{d−1})` of
//! the polynomial-basis representation is read as the base-`p` integer
//! `Σ cᵢ pⁱ`. Ordering elements by that integer is the "lexicographic" order
//! used for every deterministic choice below (highest coefficient first).

use std::fmt;

use crate::arith::{factorize, is_prime, prime_power};
use crate::{Error, Result};

/// Largest field order the table-driven implementation accepts.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A field element in packed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Characteristic, degree and the defining modulus of a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub d: u32,
    /// Monic irreducible modulus, coefficients from degree 0 up to degree `d`.
    pub modulus: Vec<u32>,
}

type Poly = Vec<u32>;

fn poly_trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    poly_trim(out.into_iter().map(|c| c as u32).collect())
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    crate::arith::pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

/// Remainder of `a` modulo a nonzero `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let mut r: Vec<u32> = a.to_vec();
    let m = poly_trim(m.to_vec());
    let lead_inv = inv_mod_p(*m.last().expect("nonzero modulus"), p);
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
        r = poly_trim(r);
    }
    r
}

fn unpack(mut x: u32, p: u32, d: u32) -> Poly {
    let mut c = Vec::with_capacity(d as usize);
    for _ in 0..d {
        c.push(x % p);
        x /= p;
    }
    c
}

fn pack(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    for e in 1..=deg / 2 {
        let count = (p as u64).pow(e);
        for low in 0..count {
            let mut g = unpack(low as u32, p, e);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of degree `d` over GF(p).
pub fn least_irreducible(p: u32, d: u32) -> Vec<u32> {
    let count = (p as u64).pow(d);
    for low in 0..count {
        let mut f = unpack(low as u32, p, d);
        f.push(1);
        if d == 1 || (f[0] != 0 && is_irreducible(&f, p)) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A finite field with precomputed log/exp tables.
#[derive(Clone)]
pub struct Gf {
    spec: FieldSpec,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.spec.p, self.spec.d, self.spec.modulus)
    }
}

impl Gf {
    /// GF(p^d) with the lexicographically least monic irreducible modulus.
    pub fn new(p: u32, d: u32) -> Result<Gf> {
        if !is_prime(p as u64) || d == 0 {
            return Err(Error::Field(format!("GF({p}^{d}) is not a field")));
        }
        Gf::with_modulus(p, least_irreducible(p, d))
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Gf> {
        let (p, d) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        Gf::new(p as u32, d)
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Gf> {
        let modulus = poly_trim(modulus);
        if !is_prime(p as u64) || modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Field("modulus must be monic of degree >= 1 over a prime field".into()));
        }
        let d = modulus.len() as u32 - 1;
        let order64 = (p as u64).pow(d);
        if order64 > MAX_FIELD_ORDER {
            return Err(Error::Field(format!("field order {order64} above the supported {MAX_FIELD_ORDER}")));
        }
        if d <= 8 && !is_irreducible(&modulus, p) {
            return Err(Error::Field(format!("modulus {modulus:?} is reducible over GF({p})")));
        }
        let order = order64 as u32;
        let mulp = |a: u32, b: u32| -> u32 {
            let prod = poly_mul(&unpack(a, p, d), &unpack(b, p, d), p);
            pack(&poly_rem(&prod, &modulus, p), p)
        };
        let n = order - 1;
        let primes: Vec<u64> = factorize(n as u64).into_iter().map(|(l, _)| l).collect();
        let pow_slow = |a: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            let mut base = a;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulp(acc, base);
                }
                base = mulp(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..order)
            .find(|&g| n == 1 || primes.iter().all(|&l| pow_slow(g, n as u64 / l) != 1))
            .ok_or_else(|| Error::Field("no primitive element (modulus reducible?)".into()))?;
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![u32::MAX; order as usize];
        let mut x = 1u32;
        for i in 0..n {
            if log[x as usize] != u32::MAX {
                return Err(Error::Field(format!("modulus {modulus:?} is reducible over GF({p})")));
            }
            exp[i as usize] = x;
            exp[(i + n) as usize] = x;
            log[x as usize] = i;
            x = mulp(x, generator);
        }
        let add_digits = |a: u32, b: u32| -> u32 {
            if p == 2 {
                return a ^ b;
            }
            let (ca, cb) = (unpack(a, p, d), unpack(b, p, d));
            let c: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
            pack(&c, p)
        };
        let add_table = (p != 2 && order <= 1024).then(|| {
            let mut t = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = add_digits(a, b);
                }
            }
            t
        });
        let neg = (0..order)
            .map(|a| {
                let c: Vec<u32> = unpack(a, p, d).iter().map(|&x| (p - x) % p).collect();
                pack(&c, p)
            })
            .collect();
        Ok(Gf { spec: FieldSpec { p, d, modulus }, order, exp, log, add_table, neg })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.d
    }

    /// The primitive element used for the log tables: least in packed order.
    pub fn primitive(&self) -> FieldElem {
        FieldElem(self.exp[1.min(self.exp.len() - 1)])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order).map(FieldElem)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() > self.spec.d as usize || coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::Field(format!("{coeffs:?} is not a reduced coefficient vector")));
        }
        Ok(FieldElem(pack(coeffs, self.spec.p)))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        unpack(a.0, self.spec.p, self.spec.d)
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.spec.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        match &self.add_table {
            Some(t) => FieldElem(t[(a.0 * self.order + b.0) as usize]),
            None => {
                let p = self.spec.p;
                let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
                while x > 0 || y > 0 {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                FieldElem(out)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        FieldElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.order - 1;
        Ok(FieldElem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let n = (self.order - 1) as u64;
        FieldElem(self.exp[((self.log[a.0 as usize] as u64 * (e % n)) % n) as usize])
    }

    /// Discrete logarithm base [`Gf::primitive`].
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.order - 1) as u64;
        Some(n / num_integer::gcd(l, n))
    }

    /// An element of multiplicative order exactly `n`: the primitive element
    /// raised to `(|F|−1)/n`.
    pub fn element_of_order(&self, n: u64) -> Result<FieldElem> {
        let m = (self.order - 1) as u64;
        if n == 0 || !m.is_multiple_of(n) {
            return Err(Error::Field(format!("{n} does not divide {m}")));
        }
        Ok(self.pow(self.primitive(), m / n))
    }

    /// `a ↦ a^q` where the field has order `q²`.
    pub fn frobenius_q(&self, a: FieldElem, q: u32) -> Result<FieldElem> {
        if (q as u64) * (q as u64) != self.order as u64 {
            return Err(Error::Field(format!("field of order {} is not GF({q}²)", self.order)));
        }
        Ok(self.pow(a, q as u64))
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        match self.log(a) {
            None => true,
            Some(l) => self.spec.p == 2 || l % 2 == 0,
        }
    }
}

/// GF(q²) together with its subfield GF(q) and the conjugation `x ↦ x^q`.
#[derive(Clone, Debug)]
pub struct SquareField {
    pub field: Gf,
    pub q: u32,
    frob: Vec<FieldElem>,
    subfield: Vec<FieldElem>,
}

impl SquareField {
    /// Builds GF(q²) as the degree-2d extension of GF(p), `q = p^d`.
    pub fn new(q: u32) -> Result<SquareField> {
        let (p, d) = prime_power(q as u64).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        let field = Gf::new(p as u32, 2 * d)?;
        let frob: Vec<FieldElem> = field.elements().map(|a| field.pow(a, q as u64)).collect();
        let subfield = field.elements().filter(|a| frob[a.0 as usize] == *a).collect();
        Ok(SquareField { field, q, frob, subfield })
    }

    #[inline]
    pub fn conj(&self, a: FieldElem) -> FieldElem {
        self.frob[a.0 as usize]
    }

    /// The embedded copy of GF(q), in packed order.
    pub fn subfield(&self) -> &[FieldElem] {
        &self.subfield
    }

    /// `a^{q+1}`, the norm to GF(q).
    pub fn norm(&self, a: FieldElem) -> FieldElem {
        self.field.mul(a, self.conj(a))
    }

    /// All pairs `(α, β)` with `α + α^q + β^{q+1} = 0`, in packed order.
    pub fn hermitian_trace_zero_pairs(&self) -> Vec<(FieldElem, FieldElem)> {
        let f = &self.field;
        let mut out = Vec::new();
        for a in f.elements() {
            let tr = f.add(a, self.conj(a));
            for b in f.elements() {
                if f.add(tr, self.norm(b)).is_zero() {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field() {
        let f = Gf::new(7, 1).unwrap();
        assert_eq!(f.mul(FieldElem(3), FieldElem(5)), FieldElem(1));
        assert_eq!(f.primitive(), FieldElem(3));
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
        }
        assert!(matches!(f.inv(FieldElem::ZERO), Err(Error::DivisionByZero)));
        assert!(f.div(FieldElem(1), FieldElem::ZERO).is_err());
    }

    #[test]
    fn gf4_reduction() {
        let f = Gf::new(2, 2).unwrap();
        assert_eq!(f.spec().modulus, vec![1, 1, 1]);
        let x = f.from_coeffs(&[0, 1]).unwrap();
        let x1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(x, x), x1);
    }

    #[test]
    fn least_moduli() {
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(2, 6), vec![1, 1, 0, 0, 0, 0, 1]);
        assert!(Gf::with_modulus(2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for (p, d) in [(2, 3), (3, 2), (5, 2), (2, 4), (3, 3)] {
            let f = Gf::new(p, d).unwrap();
            let els: Vec<FieldElem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in els.iter().step_by(3) {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            assert_eq!(f.mult_order(f.primitive()), Some(f.order() as u64 - 1));
        }
    }

    #[test]
    fn frobenius_gf9() {
        let f = Gf::new(3, 2).unwrap();
        let w = f.primitive();
        let w3 = f.frobenius_q(w, 3).unwrap();
        assert_eq!(w3, f.pow(w, 3));
        assert_eq!(f.frobenius_q(w3, 3).unwrap(), w);
        for a in 0..3 {
            let a = f.from_int(a);
            assert_eq!(f.frobenius_q(a, 3).unwrap(), a);
        }
        assert!(f.frobenius_q(w, 2).is_err());
    }

    #[test]
    fn element_orders() {
        let f = Gf::new(3, 2).unwrap();
        let g = f.element_of_order(4).unwrap();
        assert_eq!(f.pow(g, 4), FieldElem::ONE);
        assert_ne!(f.pow(g, 2), FieldElem::ONE);
        assert_eq!(f.element_of_order(1).unwrap(), FieldElem::ONE);
        assert!(f.element_of_order(5).is_err());
        let f64 = Gf::new(2, 6).unwrap();
        let g = f64.element_of_order(3).unwrap();
        assert_eq!(g, f64.pow(f64.primitive(), 21));
        assert_eq!(f64.pow(g, 3), FieldElem::ONE);
        assert_ne!(g, FieldElem::ONE);
    }

    #[test]
    fn frobenius_is_an_involutive_automorphism() {
        let sf = SquareField::new(64).unwrap();
        let f = &sf.field;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = FieldElem(rng.gen_range(0..f.order()));
            let b = FieldElem(rng.gen_range(0..f.order()));
            assert_eq!(sf.conj(sf.conj(a)), a);
            assert_eq!(sf.conj(f.add(a, b)), f.add(sf.conj(a), sf.conj(b)));
            assert_eq!(sf.conj(f.mul(a, b)), f.mul(sf.conj(a), sf.conj(b)));
        }
        assert_eq!(sf.subfield().len(), 64);
    }

    #[test]
    fn trace_zero_pair_counts() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let sf = SquareField::new(q).unwrap();
            let pairs = sf.hermitian_trace_zero_pairs();
            assert_eq!(pairs.len() as u32, q * q * q, "q = {q}");
            assert_eq!(pairs[0], (FieldElem::ZERO, FieldElem::ZERO));
        }
    }
}
