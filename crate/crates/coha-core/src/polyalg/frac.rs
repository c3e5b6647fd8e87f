use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use num_traits::{One, Zero};

use super::{fmt_q, Poly, Series, Var, Q};
use crate::AlgError;

/// A rational function kept in factored form:
/// `scalar · ∏ f^k` with monic, non-constant factors `f` and nonzero `k ∈ ℤ`.
///
/// Factors are whatever polynomials the construction produced (mostly the
/// linear forms of Euler classes); nothing is factored further. Equality is
/// decided by cross-multiplication after cancelling identical factors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Frac {
    scalar: Q,
    factors: BTreeMap<Poly, i32>,
}

impl Frac {
    pub fn zero() -> Self {
        Frac { scalar: Q::zero(), factors: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Frac::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Frac { scalar: c, factors: BTreeMap::new() }
    }

    pub fn from_poly(p: &Poly) -> Self {
        Frac::factor(p, 1)
    }

    /// `p^k`.
    pub fn factor(p: &Poly, k: i32) -> Self {
        if let Some(c) = p.as_constant() {
            if c.is_zero() {
                assert!(k > 0, "zero raised to a non-positive power");
                return Frac::zero();
            }
            return Frac::constant(pow_q(&c, k));
        }
        let (lc, monic) = p.monic();
        let mut factors = BTreeMap::new();
        if k != 0 {
            factors.insert(monic, k);
        }
        Frac { scalar: pow_q(&lc, k), factors }
    }

    /// `∏ p^k` over the given factors.
    pub fn product<'a>(it: impl IntoIterator<Item = (&'a Poly, i32)>) -> Self {
        let mut out = Frac::one();
        for (p, k) in it {
            if let Some(c) = p.as_constant() {
                if c.is_zero() {
                    assert!(k > 0, "zero raised to a non-positive power");
                    return Frac::zero();
                }
                out.scalar *= pow_q(&c, k);
                continue;
            }
            let (lc, monic) = p.monic();
            out.scalar *= pow_q(&lc, k);
            let e = out.factors.entry(monic).or_insert(0);
            *e += k;
            if *e == 0 {
                out.factors.retain(|_, k| *k != 0);
            }
        }
        out
    }

    /// `numerator / denominator` for plain polynomials.
    pub fn ratio(num: &Poly, den: &Poly) -> Self {
        Frac::from_poly(num).mul(&Frac::factor(den, -1))
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn scalar(&self) -> &Q {
        &self.scalar
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Poly, i32)> {
        self.factors.iter().map(|(p, &k)| (p, k))
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.values().all(|&k| k > 0)
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        if self.is_zero() || other.is_zero() {
            return Frac::zero();
        }
        let mut factors = self.factors.clone();
        for (p, &k) in &other.factors {
            let e = factors.entry(p.clone()).or_insert(0);
            *e += k;
            if *e == 0 {
                factors.remove(p);
            }
        }
        Frac { scalar: &self.scalar * &other.scalar, factors }
    }

    pub fn scale(&self, c: &Q) -> Frac {
        if c.is_zero() {
            return Frac::zero();
        }
        Frac { scalar: &self.scalar * c, factors: self.factors.clone() }
    }

    pub fn neg(&self) -> Frac {
        Frac { scalar: -self.scalar.clone(), factors: self.factors.clone() }
    }

    pub fn inv(&self) -> Result<Frac, AlgError> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero(String::from("inverse of zero fraction")));
        }
        Ok(Frac {
            scalar: Q::one() / &self.scalar,
            factors: self.factors.iter().map(|(p, &k)| (p.clone(), -k)).collect(),
        })
    }

    pub fn div(&self, other: &Frac) -> Result<Frac, AlgError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Frac, AlgError> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if self.is_zero() {
            return Ok(if k == 0 { Frac::one() } else { Frac::zero() });
        }
        Ok(Frac {
            scalar: pow_q(&self.scalar, k),
            factors: if k == 0 {
                BTreeMap::new()
            } else {
                self.factors.iter().map(|(p, &e)| (p.clone(), e * k)).collect()
            },
        })
    }

    /// Expanded numerator (including the scalar).
    pub fn numerator(&self) -> Poly {
        let mut acc = Poly::constant(self.scalar.clone());
        for (p, &k) in &self.factors {
            if k > 0 {
                acc = &acc * &p.pow(k as u32);
            }
        }
        acc
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> Poly {
        let mut acc = Poly::one();
        for (p, &k) in &self.factors {
            if k < 0 {
                acc = &acc * &p.pow((-k) as u32);
            }
        }
        acc
    }

    /// The polynomial value when no denominator remains.
    pub fn to_poly(&self) -> Option<Poly> {
        self.is_polynomial().then(|| self.numerator())
    }

    pub fn add(&self, other: &Frac) -> Frac {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut common: BTreeMap<Poly, i32> = BTreeMap::new();
        let mut den: BTreeMap<Poly, i32> = BTreeMap::new();
        for (p, &k) in &self.factors {
            if k < 0 {
                den.insert(p.clone(), -k);
            } else if let Some(&j) = other.factors.get(p) {
                if j > 0 {
                    common.insert(p.clone(), k.min(j));
                }
            }
        }
        for (p, &k) in &other.factors {
            if k < 0 {
                let e = den.entry(p.clone()).or_insert(0);
                *e = (*e).max(-k);
            }
        }
        let lift = |f: &Frac| -> Poly {
            let mut acc = Poly::constant(f.scalar.clone());
            for (p, &k) in &f.factors {
                if k > 0 {
                    let extra = k - common.get(p).copied().unwrap_or(0);
                    if extra > 0 {
                        acc = &acc * &p.pow(extra as u32);
                    }
                }
            }
            for (p, &d) in &den {
                let own = f.factors.get(p).copied().filter(|&k| k < 0).map_or(0, |k| -k);
                if d > own {
                    acc = &acc * &p.pow((d - own) as u32);
                }
            }
            acc
        };
        let mut sum = lift(self);
        sum += lift(other);
        if sum.is_zero() {
            return Frac::zero();
        }
        for (p, d) in den.iter_mut() {
            while *d > 0 {
                match sum.div_exact(p) {
                    Some(q) => {
                        sum = q;
                        *d -= 1;
                    }
                    None => break,
                }
            }
        }
        let mut out = Frac::from_poly(&sum);
        for (p, k) in common {
            out = out.mul(&Frac::factor(&p, k));
        }
        for (p, d) in den {
            if d > 0 {
                out = out.mul(&Frac::factor(&p, -d));
            }
        }
        out
    }

    pub fn sub(&self, other: &Frac) -> Frac {
        self.add(&other.neg())
    }

    /// Exact equality of rational functions (cross-multiplication).
    pub fn eq_exact(&self, other: &Frac) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let r = self.div(other).expect("nonzero");
        let mut lhs = Poly::constant(r.scalar.clone());
        let mut rhs = Poly::one();
        for (p, &k) in &r.factors {
            if k > 0 {
                lhs = &lhs * &p.pow(k as u32);
            } else {
                rhs = &rhs * &p.pow((-k) as u32);
            }
        }
        lhs == rhs
    }

    /// Renames variables in every factor.
    pub fn rename(&self, f: &dyn Fn(Var) -> Var) -> Frac {
        let mut out = Frac::constant(self.scalar.clone());
        for (p, &k) in &self.factors {
            out = out.mul(&Frac::factor(&p.rename(f), k));
        }
        out
    }

    /// Substitutes variables in every factor.
    pub fn subst(&self, f: &dyn Fn(Var) -> Option<Poly>) -> Result<Frac, AlgError> {
        if self.is_zero() {
            return Ok(Frac::zero());
        }
        let mut out = Frac::constant(self.scalar.clone());
        for (p, &k) in &self.factors {
            let img = p.subst(f);
            if img.is_zero() {
                if k < 0 {
                    return Err(AlgError::DivisionByZero(format!("factor {p} vanishes")));
                }
                return Ok(Frac::zero());
            }
            out = out.mul(&Frac::factor(&img, k));
        }
        Ok(out)
    }

    /// Laurent expansion at `var = ∞`, exact for exponents `≥ -order`.
    pub fn expand(&self, var: Var, order: i64) -> Result<Series, AlgError> {
        Series::from_frac(self, var, order)
    }

    /// Canonical text `(numerator) / (denominator)`, or just the numerator.
    pub fn to_canonical(&self) -> String {
        let num = self.numerator();
        let den = self.denominator();
        if den.as_constant().is_some_and(|c| c.is_one()) {
            num.to_canonical()
        } else {
            format!("({}) / ({})", num.to_canonical(), den.to_canonical())
        }
    }

    /// Compact factored text, useful for diagnostics.
    pub fn to_factored(&self) -> String {
        let mut s = format!("({})", fmt_q(&self.scalar));
        for (p, &k) in &self.factors {
            s.push_str(&format!(" * ({p})^{k}"));
        }
        s
    }
}

/// `fraction_eq`: true iff `f.num · g.den = g.num · f.den`.
pub fn fraction_eq(f: &Frac, g: &Frac) -> bool {
    f.eq_exact(g)
}

fn pow_q(c: &Q, k: i32) -> Q {
    let mut acc = Q::one();
    let base = if k < 0 { Q::one() / c } else { c.clone() };
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::q;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }

    #[test]
    fn difference_of_squares() {
        let (z, x) = (v(Var::Z), v(Var::root(1, 0, 1)));
        let f = Frac::ratio(&(&z.pow(2) - &x.pow(2)), &(&z - &x));
        let g = Frac::from_poly(&(&z + &x));
        assert!(fraction_eq(&f, &g));
    }

    #[test]
    fn distinct_symbols_differ() {
        let (z, x, y) = (v(Var::Z), v(Var::root(1, 0, 1)), v(Var::root(2, 0, 1)));
        let f = Frac::ratio(&(&z + &x), &(&z + &y));
        assert!(!fraction_eq(&f, &Frac::one()));
    }

    #[test]
    fn scaled_representative() {
        let (z, x) = (v(Var::Z), v(Var::root(1, 0, 1)));
        let f = Frac::ratio(&(&z + &x), &(&z - &x));
        let g = Frac::ratio(&(&z + &x).scale(&q(3)), &(&z - &x).scale(&q(3)));
        assert!(fraction_eq(&f, &g));
    }

    #[test]
    fn sums_cancel_denominators() {
        let (a, b) = (v(Var::root(1, 0, 1)), v(Var::root(1, 0, 2)));
        let t1 = Frac::ratio(&a, &(&b - &a));
        let t2 = Frac::ratio(&b, &(&a - &b));
        let s = t1.add(&t2);
        assert_eq!(s.to_poly(), Some(Poly::int(-1)));
    }
}
