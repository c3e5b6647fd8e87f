use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{q, Frac, Poly, Var, Q};
use crate::AlgError;

/// Sentinel for "exact in every degree".
const EXACT: i64 = i64::MIN / 4;

/// A Laurent series in one variable at infinity, `Σ c_k var^k`, with
/// polynomial coefficients in the remaining variables. It is exact for
/// exponents `≥ lo`; nothing below `lo` is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    var: Var,
    lo: i64,
    terms: BTreeMap<i64, Poly>,
}

impl Series {
    /// A polynomial read as an exact series.
    pub fn from_poly(p: &Poly, var: Var) -> Self {
        let terms = p.coeffs_in(var).into_iter().map(|(k, c)| (k as i64, c)).collect();
        Series { var, lo: EXACT, terms }
    }

    pub fn zero(var: Var) -> Self {
        Series { var, lo: EXACT, terms: BTreeMap::new() }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Lowest exponent up to which the series is exact (`None` if exact everywhere).
    pub fn exact_from(&self) -> Option<i64> {
        (self.lo > EXACT / 2).then_some(self.lo)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of `var^k`; zero above the top, `None` below the exact range.
    pub fn coeff(&self, k: i64) -> Option<Poly> {
        if k < self.lo {
            return None;
        }
        Some(self.terms.get(&k).cloned().unwrap_or_default())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Poly)> {
        self.terms.iter().map(|(&k, p)| (k, p))
    }

    /// Drops everything below `lo`.
    pub fn truncate(&self, lo: i64) -> Series {
        let lo = lo.max(self.lo);
        Series { var: self.var, lo, terms: self.terms.range(lo..).map(|(&k, p)| (k, p.clone())).collect() }
    }

    pub fn add(&self, other: &Series) -> Series {
        let lo = self.lo.max(other.lo);
        let mut terms = self.terms.clone();
        for (&k, p) in &other.terms {
            let e = terms.entry(k).or_default();
            *e += p;
        }
        terms.retain(|&k, p| k >= lo && !p.is_zero());
        Series { var: self.var, lo, terms }
    }

    pub fn scale(&self, c: &Poly) -> Series {
        let terms: BTreeMap<i64, Poly> =
            self.terms.iter().map(|(&k, p)| (k, p * c)).filter(|(_, p)| !p.is_zero()).collect();
        Series { var: self.var, lo: self.lo, terms }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let lo = match (self.top(), other.top()) {
            (None, None) => self.lo.max(other.lo),
            (Some(ta), None) => other.lo.saturating_add(ta).max(EXACT),
            (None, Some(tb)) => self.lo.saturating_add(tb).max(EXACT),
            (Some(ta), Some(tb)) => (self.lo + tb).max(other.lo + ta).max(EXACT),
        };
        let lo = if lo < EXACT / 2 { EXACT } else { lo };
        let mut terms: BTreeMap<i64, Poly> = BTreeMap::new();
        for (&i, a) in &self.terms {
            for (&j, b) in other.terms.range((lo - i)..) {
                let e = terms.entry(i + j).or_default();
                *e += &(a * b);
            }
        }
        terms.retain(|_, p| !p.is_zero());
        Series { var: self.var, lo, terms }
    }

    /// `1/f` for a polynomial `f` whose leading coefficient in `var` is a
    /// nonzero rational, exact down to `lo`.
    pub fn inverse_of(f: &Poly, var: Var, lo: i64) -> Result<Series, AlgError> {
        let coeffs = f.coeffs_in(var);
        let (&n, lead) = coeffs
            .iter()
            .next_back()
            .ok_or_else(|| AlgError::DivisionByZero(String::from("inverse of zero")))?;
        let lc = lead.as_constant().filter(|c| !c.is_zero()).ok_or_else(|| {
            AlgError::NotExpandable(format!("leading coefficient {lead} of {f} in {var} is not a unit"))
        })?;
        let inv_lc = Q::one() / &lc;
        let n = n as i64;
        let c: Vec<Poly> = (0..=n)
            .map(|k| coeffs.get(&((n - k) as u32)).map_or_else(Poly::zero, |p| p.scale(&inv_lc)))
            .collect();
        let count = (-n - lo).max(-1) + 1;
        let mut b: Vec<Poly> = Vec::with_capacity(count as usize);
        for m in 0..count {
            if m == 0 {
                b.push(Poly::one());
                continue;
            }
            let mut acc = Poly::zero();
            for k in 1..=m.min(n) {
                acc -= &(&c[k as usize] * &b[(m - k) as usize]);
            }
            b.push(acc);
        }
        let terms = b
            .into_iter()
            .enumerate()
            .map(|(m, p)| (-n - m as i64, p.scale(&inv_lc)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        Ok(Series { var, lo, terms })
    }

    /// Expansion of a factored fraction, exact for exponents `≥ -order`.
    pub fn from_frac(f: &Frac, var: Var, order: i64) -> Result<Series, AlgError> {
        let target = -order;
        let tops: Vec<(Poly, i32, i64)> = f
            .factors()
            .map(|(p, k)| {
                let d = p.degree_in(var) as i64;
                (p.clone(), k, d * k as i64)
            })
            .collect();
        let total: i64 = tops.iter().map(|t| t.2).sum();
        let mut acc = Series::from_poly(&Poly::constant(f.scalar().clone()), var);
        for (p, k, top) in tops {
            let s = if k > 0 {
                Series::from_poly(&p.pow(k as u32), var)
            } else {
                let need = target - (total - top);
                Series::inverse_of(&p.pow((-k) as u32), var, need)?
            };
            acc = acc.mul(&s);
        }
        let mut out = acc.truncate(target);
        out.lo = target;
        Ok(out)
    }

    /// Canonical text: `[k] coeff` lines by decreasing exponent.
    pub fn to_canonical(&self) -> String {
        let mut s = String::new();
        for (k, p) in self.terms.iter().rev() {
            s.push_str(&format!("{}^{}: {}\n", self.var, k, p.to_canonical()));
        }
        if let Some(lo) = self.exact_from() {
            s.push_str(&format!("+ O({}^{})\n", self.var, lo - 1));
        }
        s
    }
}

/// Truncated power series `Σ_{k<n} c_k t^k` in an implicit variable.
pub type PowerSeries = Vec<Poly>;

pub fn ps_mul(a: &[Poly], b: &[Poly], n: usize) -> PowerSeries {
    let mut out = alloc::vec![Poly::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// `exp(L)` for `L` with zero constant term, through `t^{n-1}`.
pub fn ps_exp(l: &[Poly], n: usize) -> PowerSeries {
    let mut e: PowerSeries = alloc::vec![Poly::zero(); n];
    if n == 0 {
        return e;
    }
    e[0] = Poly::one();
    for k in 1..n {
        let mut acc = Poly::zero();
        for j in 1..=k {
            if let Some(lj) = l.get(j) {
                if !lj.is_zero() {
                    acc += &(lj * &e[k - j]).scale(&q(j as i64));
                }
            }
        }
        e[k] = acc.scale(&(Q::one() / q(k as i64)));
    }
    e
}

/// `log(A)` for `A` with constant term 1, through `t^{n-1}`.
pub fn ps_log(a: &[Poly], n: usize) -> PowerSeries {
    // k·L_k = k·A_k − Σ_{j<k} j·L_j·A_{k−j}
    let mut l: PowerSeries = alloc::vec![Poly::zero(); n];
    let get = |k: usize| a.get(k).cloned().unwrap_or_default();
    for k in 1..n {
        let mut acc = get(k).scale(&q(k as i64));
        for j in 1..k {
            acc -= &(&l[j] * &get(k - j)).scale(&q(j as i64));
        }
        l[k] = acc.scale(&(Q::one() / q(k as i64)));
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }

    #[test]
    fn geometric_series() {
        let a = v(Var::root(1, 0, 1));
        let f = Frac::ratio(&Poly::one(), &(&v(Var::Z) - &a));
        let s = f.expand(Var::Z, 4).unwrap();
        assert_eq!(s.coeff(-1), Some(Poly::one()));
        assert_eq!(s.coeff(-2), Some(a.clone()));
        assert_eq!(s.coeff(-3), Some(a.pow(2)));
        assert_eq!(s.coeff(-4), Some(a.pow(3)));
        assert_eq!(s.coeff(0), Some(Poly::zero()));
        assert_eq!(s.coeff(-5), None);
    }

    #[test]
    fn exp_log_roundtrip() {
        let x = v(Var::root(1, 0, 1));
        let l = alloc::vec![Poly::zero(), x.clone(), x.pow(2)];
        let e = ps_exp(&l, 6);
        let back = ps_log(&e, 6);
        assert_eq!(&back[..3], &l[..]);
        assert!(back[3..].iter().all(Poly::is_zero));
    }

    #[test]
    fn non_unit_leading_coefficient_rejected() {
        let x = v(Var::root(1, 0, 1));
        let f = Frac::ratio(&Poly::one(), &(&x * &v(Var::Z)));
        assert!(matches!(f.expand(Var::Z, 3), Err(AlgError::NotExpandable(_))));
    }
}
