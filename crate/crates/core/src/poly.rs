//! Sparse multivariate polynomials over ℤ, just enough for fraction-free
//! elimination: multiply, subtract, exact division.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense exponent vector; the derived `Ord` is lexicographic, which is a
/// monomial order (compatible with multiplication).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub(crate) struct Monomial(Box<[u16]>);

impl Monomial {
    fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    fn var(nvars: usize, v: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[v] = 1;
        Monomial(exps.into_boxed_slice())
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Box<[u16]>>>()
            .map(Monomial)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::one(nvars), BigInt::one());
        p
    }

    /// `Σ coef · x_var`.
    pub fn linear(nvars: usize, terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut p = Self::zero(nvars);
        for (v, c) in terms {
            p.add_term(Monomial::var(nvars, v), BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    /// `self / divisor` when the division is exact in ℤ[x], else `None`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (lead_m, lead_c) = divisor.terms.iter().next_back()?;
        if divisor.terms.len() == 1 && lead_c.is_one() && lead_m.0.iter().all(|&e| e == 0) {
            return Some(self.clone());
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.terms.iter().next_back() {
            let qm = rm.div(lead_m)?;
            let (qc, r) = (rc / lead_c, rc % lead_c);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &divisor.terms {
                rem.add_term(qm.mul(dm), -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Value at a point, reduced modulo `modulus`.
    #[cfg(test)]
    pub fn eval_mod(&self, point: &[u64], modulus: u64) -> u64 {
        use num_traits::ToPrimitive;
        let m = BigInt::from(modulus);
        let mut acc = BigInt::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in mono.0.iter().enumerate() {
                t = t * BigInt::from(point[v]).modpow(&BigInt::from(e), &m) % &m;
            }
            acc += t;
        }
        (((acc % &m) + &m) % &m).to_u64().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_recovers_factor() {
        // (x0 + 2 x1)(3 x0 - x2) / (x0 + 2 x1)
        let a = Poly::linear(3, [(0, 1), (1, 2)]);
        let b = Poly::linear(3, [(0, 3), (2, -1)]);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(a.exact_div(&b), None);
        assert_eq!(prod.exact_div(&Poly::one(3)), Some(prod.clone()));
    }

    #[test]
    fn subtraction_cancels() {
        let a = Poly::linear(2, [(0, 1), (1, -1)]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.mul(&Poly::zero(2)), Poly::zero(2));
    }

    #[test]
    fn evaluation_is_a_ring_map() {
        let a = Poly::linear(2, [(0, 5), (1, -7)]);
        let b = Poly::linear(2, [(0, -1), (1, 2)]);
        let p = 1_000_003;
        let pt = [12345, 999_000];
        let lhs = a.mul(&b).eval_mod(&pt, p);
        let rhs = (a.eval_mod(&pt, p) as u128 * b.eval_mod(&pt, p) as u128 % p as u128) as u64;
        assert_eq!(lhs, rhs);
    }
}
