//! Exact arithmetic in `Z[ζ_e]`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

thread_local! {
    static PHI: RefCell<HashMap<usize, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Integer coefficients of `Φ_e`, lowest degree first.
pub fn cyclotomic_polynomial(e: usize) -> Vec<i64> {
    phi(e).as_ref().clone()
}

fn phi(e: usize) -> Rc<Vec<i64>> {
    assert!(e >= 1);
    if let Some(p) = PHI.with(|m| m.borrow().get(&e).cloned()) {
        return p;
    }
    // x^e − 1 divided by Φ_d for every proper divisor d of e.
    let mut p = vec![0i64; e + 1];
    p[0] = -1;
    p[e] = 1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            p = div_exact(&p, &phi(d));
        }
    }
    let p = Rc::new(p);
    PHI.with(|m| m.borrow_mut().insert(e, p.clone()));
    p
}

/// Exact division by a monic polynomial.
fn div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = r.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for i in (0..=dq).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// An element of `Z[ζ_e]` in the power basis `1, ζ, …, ζ^{φ(e)−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    e: usize,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    /// Reduces `Σ c_j ζ^j` (any length) modulo `Φ_e`.
    pub fn from_powers(e: usize, powers: &[i64]) -> Cyclotomic {
        let phi = phi(e);
        let deg = phi.len() - 1;
        let mut c = vec![0i64; powers.len().max(deg)];
        for (j, &x) in powers.iter().enumerate() {
            c[j % e] += x;
        }
        for i in (deg..c.len()).rev() {
            let t = c[i];
            if t != 0 {
                for (j, &pj) in phi.iter().enumerate() {
                    c[i - deg + j] -= t * pj;
                }
            }
        }
        c.truncate(deg);
        Cyclotomic { e, coeffs: c }
    }

    pub fn integer(e: usize, n: i64) -> Cyclotomic {
        Cyclotomic::from_powers(e, &[n])
    }

    pub fn order(&self) -> usize {
        self.e
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The value as an ordinary integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs.iter().skip(1).all(|&c| c == 0) {
            Some(self.coeffs.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.e, other.e);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic { e: self.e, coeffs }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.e, other.e);
        let mut prod = vec![0i64; self.coeffs.len() + other.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Cyclotomic::from_powers(self.e, &prod)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match j {
                0 => format!("{c}"),
                1 => format!("{c}·z"),
                _ => format!("{c}·z^{j}"),
            })
            .collect();
        write!(f, "{} (z = e^(2πi/{}))", terms.join(" + "), self.e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for e in 2..20 {
            let z = Cyclotomic::from_powers(e, &vec![1; e]);
            assert_eq!(z.as_integer(), Some(0), "e = {e}");
        }
        // 1 + ζ₃ = −ζ₃²
        let a = Cyclotomic::from_powers(3, &[1, 1]);
        let b = Cyclotomic::from_powers(3, &[0, 0, -1]);
        assert_eq!(a, b);
    }

    #[test]
    fn product_of_conjugate_gauss_periods() {
        // Gaussian periods of Z₁₃: η + η' = −1, ηη' = (1 − 13)/4.
        let squares: Vec<usize> = (1..13).map(|x| x * x % 13).collect();
        let mut p = vec![0i64; 13];
        let mut q = vec![0i64; 13];
        for x in 1..13 {
            if squares.contains(&x) {
                p[x] += 1;
            } else {
                q[x] += 1;
            }
        }
        let (a, b) = (Cyclotomic::from_powers(13, &p), Cyclotomic::from_powers(13, &q));
        assert_eq!(a.add(&b).as_integer(), Some(-1));
        assert_eq!(a.mul(&b).as_integer(), Some(-3));
    }
}
