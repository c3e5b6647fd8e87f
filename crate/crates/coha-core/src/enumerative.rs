//! Graded dimensions of CoHA components at `W = 0` and their BPS
//! factorisation.
//!
//! The character of `A_{Q,d}` is `q^{χ(d,d)} ∏_i ∏_{k≤d_i} (1 − q^{2k})⁻¹`.
//! For symmetric quivers the generating series over all `d` is a
//! super-symmetric algebra on `⊕_d Ω_d(q)·x^d/(1 − q²)`, where a monomial
//! `q^n` counts with parity `n mod 2`. The Adams operations of that
//! λ-ring are `ψ_k(q^n x^d) = (−1)^{(k−1)n} q^{kn} x^{kd}`.
//!
//! Series carry an explicit exactness bound: every coefficient of `q^n`
//! with `n ≤ top` is exact. Intermediate computations widen the bound
//! until the requested order is certified.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::coproducts::Verdict;
use crate::polyalg::{fmt_q, q, qf};
use crate::quiver::{DimVector, Quiver};
use crate::{AlgError, Q};

const INF: i64 = i64::MAX / 4;

/// Truncated Laurent series in `q`, exact for exponents `≤ top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<i64, Q>,
    top: i64,
}

impl QSeries {
    /// The zero series, exact in every degree.
    pub fn zero() -> Self {
        QSeries { coeffs: BTreeMap::new(), top: INF }
    }

    pub fn one() -> Self {
        QSeries::monomial(0, q(1))
    }

    pub fn monomial(n: i64, c: Q) -> Self {
        let mut s = QSeries::zero();
        s.add_coeff(n, c);
        s
    }

    /// An empty series exact up to `top`.
    pub fn zero_up_to(top: i64) -> Self {
        QSeries { coeffs: BTreeMap::new(), top }
    }

    /// `Σ_{j≥0} q^{2j}` exact up to `top`.
    pub fn geometric_q2(top: i64) -> Self {
        let mut s = QSeries::zero_up_to(top);
        let mut n = 0;
        while n <= top {
            s.add_coeff(n, q(1));
            n += 2;
        }
        s
    }

    fn add_coeff(&mut self, n: i64, c: Q) {
        if n > self.top || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(n).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn is_exact(&self) -> bool {
        self.top >= INF
    }

    pub fn coeff(&self, n: i64) -> Option<Q> {
        (n <= self.top).then(|| self.coeffs.get(&n).cloned().unwrap_or_else(Q::zero))
    }

    /// Nonzero coefficients in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent that may carry a nonzero coefficient.
    fn min_exp(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.top.saturating_add(1).min(INF))
    }

    pub fn truncate(&self, top: i64) -> QSeries {
        let top = top.min(self.top);
        QSeries { coeffs: self.coeffs.range(..=top).map(|(n, c)| (*n, c.clone())).collect(), top }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let mut out = self.truncate(other.top);
        for (n, c) in &other.coeffs {
            out.add_coeff(*n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> QSeries {
        if c.is_zero() {
            return QSeries::zero();
        }
        QSeries { coeffs: self.coeffs.iter().map(|(n, x)| (*n, x * c)).collect(), top: self.top }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|(n, c)| (n + k, c.clone())).collect(),
            top: if self.is_exact() { INF } else { self.top + k },
        }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let top = self
            .top
            .saturating_add(other.min_exp())
            .min(other.top.saturating_add(self.min_exp()))
            .min(INF);
        let mut out = QSeries::zero_up_to(top);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if a + b > top {
                    break;
                }
                out.add_coeff(a + b, x * y);
            }
        }
        out
    }

    /// Signed Adams operation `q^n ↦ (−1)^{(k−1)n} q^{kn}`.
    pub fn adams(&self, k: u32) -> QSeries {
        let k = k as i64;
        let top = if self.is_exact() { INF } else { k * self.top + (k - 1) };
        let mut out = QSeries::zero_up_to(top);
        for (n, c) in &self.coeffs {
            let odd = ((k - 1) * n).rem_euclid(2) == 1;
            out.add_coeff(k * n, if odd { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Text form, e.g. `q^-1 + q + 2*q^3 + O(q^4)`.
    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        for (n, c) in &self.coeffs {
            let mono = match *n {
                0 => String::new(),
                1 => String::from("q"),
                n => format!("q^{n}"),
            };
            let (neg, abs) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            let body = match (abs.is_one(), mono.is_empty()) {
                (true, true) => String::from("1"),
                (true, false) => mono,
                (false, true) => fmt_q(&abs),
                (false, false) => format!("{}*{mono}", fmt_q(&abs)),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        if !self.is_exact() {
            out.push_str(&format!(" + O(q^{})", self.top + 1));
        }
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

/// Poincaré series of `A_{Q,d}`, exact through `q^order`.
pub fn coha_character(quiver: &Quiver, d: &DimVector, order: i64) -> Result<QSeries, AlgError> {
    let chi = quiver.euler_form(d, d)?;
    let inner_top = order - chi;
    let mut s = QSeries::one().truncate(inner_top);
    for &di in d.components() {
        for k in 1..=di as i64 {
            let mut geo = QSeries::zero_up_to(inner_top);
            let mut n = 0;
            while n <= inner_top {
                geo.add_coeff(n, q(1));
                n += 2 * k;
            }
            s = s.mul(&geo);
        }
    }
    Ok(s.shift(chi).truncate(order))
}

/// Generating series `Σ_d F_d x^d` restricted to a down-closed set of
/// dimension vectors; absent entries are exactly zero.
pub type DimSeries = BTreeMap<DimVector, QSeries>;

fn dim_mul(a: &DimSeries, b: &DimSeries, dims: &[DimVector]) -> DimSeries {
    let mut out = DimSeries::new();
    for (da, x) in a {
        for (db, y) in b {
            let d = da + db;
            if dims.contains(&d) {
                let p = x.mul(y);
                let slot = out.entry(d).or_insert_with(QSeries::zero);
                *slot = slot.add(&p);
            }
        }
    }
    out
}

fn dim_add(a: &mut DimSeries, b: &DimSeries, c: &Q) {
    for (d, x) in b {
        let slot = a.entry(d.clone()).or_insert_with(QSeries::zero);
        *slot = slot.add(&x.scale(c));
    }
}

/// `log(1 + A)` for `A` without constant term.
fn dim_log1p(a: &DimSeries, dims: &[DimVector]) -> DimSeries {
    let depth = dims.iter().map(DimVector::total).max().unwrap_or(0);
    let mut out = DimSeries::new();
    let mut power = a.clone();
    for m in 1..=depth as i64 {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        dim_add(&mut out, &power, &qf(sign, m));
        power = dim_mul(&power, a, dims);
    }
    out
}

/// `exp(A) − 1` for `A` without constant term.
fn dim_expm1(a: &DimSeries, dims: &[DimVector]) -> DimSeries {
    let depth = dims.iter().map(DimVector::total).max().unwrap_or(0);
    let mut out = DimSeries::new();
    let mut power = a.clone();
    let mut fact = q(1);
    for m in 1..=depth as i64 {
        fact *= q(m);
        dim_add(&mut out, &power, &(q(1) / fact.clone()));
        power = dim_mul(&power, a, dims);
    }
    out
}

/// `ψ_k` on a dimension series: `x^d ↦ x^{kd}` with the signed `q`-action.
fn dim_adams(a: &DimSeries, k: u32, dims: &[DimVector]) -> DimSeries {
    a.iter()
        .filter_map(|(d, s)| {
            let kd = DimVector::new(d.components().iter().map(|x| x * k).collect());
            dims.contains(&kd).then(|| (kd, s.adams(k)))
        })
        .collect()
}

fn mobius(n: u32) -> i64 {
    let (mut n, mut result, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Signed plethystic logarithm: the `G` with `1 + A = Exp(G)`.
pub fn plethystic_log(a: &DimSeries, dims: &[DimVector]) -> DimSeries {
    let log = dim_log1p(a, dims);
    let depth = dims.iter().map(DimVector::total).max().unwrap_or(0);
    let mut out = DimSeries::new();
    for k in 1..=depth.max(1) {
        let mu = mobius(k);
        if mu != 0 {
            dim_add(&mut out, &dim_adams(&log, k, dims), &qf(mu, k as i64));
        }
    }
    out
}

/// Signed plethystic exponential minus one: `Exp(G) − 1`.
pub fn plethystic_exp(g: &DimSeries, dims: &[DimVector]) -> DimSeries {
    let depth = dims.iter().map(DimVector::total).max().unwrap_or(0);
    let mut log = DimSeries::new();
    for k in 1..=depth.max(1) {
        dim_add(&mut log, &dim_adams(g, k, dims), &qf(1, k as i64));
    }
    dim_expm1(&log, dims)
}

fn nonzero_dims(quiver: &Quiver, max_dim: u32) -> Vec<DimVector> {
    DimVector::all_up_to(quiver.vertex_count(), max_dim).into_iter().filter(|d| !d.is_zero()).collect()
}

fn character_series(quiver: &Quiver, dims: &[DimVector], order: i64) -> Result<DimSeries, AlgError> {
    dims.iter().map(|d| Ok((d.clone(), coha_character(quiver, d, order)?))).collect()
}

fn min_top(s: &DimSeries, dims: &[DimVector]) -> i64 {
    dims.iter().map(|d| s.get(d).map_or(INF, QSeries::top)).min().unwrap_or(INF)
}

/// Runs `f` at increasing internal orders until every output entry is exact
/// through `order`.
fn certified(order: i64, dims: &[DimVector], mut f: impl FnMut(i64) -> Result<DimSeries, AlgError>) -> Result<DimSeries, AlgError> {
    let mut internal = order;
    for _ in 0..64 {
        let out = f(internal)?;
        let reached = min_top(&out, dims);
        if reached >= order {
            return Ok(dims
                .iter()
                .map(|d| (d.clone(), out.get(d).map_or_else(|| QSeries::zero_up_to(order), |s| s.truncate(order))))
                .collect());
        }
        internal += (order - reached).max(1);
    }
    Err(AlgError::NotExpandable(String::from("could not certify the requested q-order")))
}

/// BPS series `Ω_d(q)` for all nonzero `d` with `|d| ≤ max_dim`, exact
/// through `q^order`: `Z = Exp(Σ_d Ω_d x^d / (1 − q²))`.
pub fn bps_invariants(quiver: &Quiver, max_dim: u32, order: i64) -> Result<DimSeries, AlgError> {
    if !quiver.is_symmetric() {
        return Err(AlgError::Unsupported(String::from("BPS extraction needs a symmetric quiver")));
    }
    let dims = nonzero_dims(quiver, max_dim);
    certified(order, &dims, |internal| {
        let z = character_series(quiver, &dims, internal)?;
        let g = plethystic_log(&z, &dims);
        let one_minus_q2 = QSeries::one().sub(&QSeries::monomial(2, q(1)));
        Ok(g.iter().map(|(d, s)| (d.clone(), s.mul(&one_minus_q2))).collect())
    })
}

/// `Exp(Σ_d Ω_d x^d / (1 − q²)) − 1`; each entry is exact up to its `top`.
pub fn reconstruct(quiver: &Quiver, omega: &DimSeries, max_dim: u32) -> DimSeries {
    let dims = nonzero_dims(quiver, max_dim);
    let g: DimSeries = omega
        .iter()
        .map(|(d, s)| (d.clone(), s.mul(&QSeries::geometric_q2(s.top().saturating_sub(s.min_exp()).min(INF)))))
        .collect();
    plethystic_exp(&g, &dims)
}

/// The reconstructed generating series matches `coha_character` exactly
/// through `q^order`.
pub fn check_reconstruction(quiver: &Quiver, max_dim: u32, order: i64) -> Result<Verdict, AlgError> {
    let dims = nonzero_dims(quiver, max_dim);
    let mut internal = order;
    let back = loop {
        let omega = bps_invariants(quiver, max_dim, internal)?;
        let back = reconstruct(quiver, &omega, max_dim);
        let reached = min_top(&back, &dims);
        if reached >= order {
            break back;
        }
        if internal - order > 64 * order.abs().max(1) {
            return Err(AlgError::NotExpandable(String::from("could not certify the requested q-order")));
        }
        internal += (order - reached).max(1);
    };
    for d in dims {
        let expect = coha_character(quiver, &d, order)?;
        let got = back.get(&d).map_or_else(|| QSeries::zero_up_to(order), |s| s.truncate(order));
        if got != expect {
            return Ok(Verdict::Fail {
                first_difference: format!("character at {d}: {} vs {}", got.to_canonical(), expect.to_canonical()),
            });
        }
    }
    Ok(Verdict::Pass)
}

/// Every coefficient of every `Ω_d` is an integer.
pub fn check_integrality(omega: &DimSeries) -> Verdict {
    for (d, s) in omega {
        if let Some((n, c)) = s.terms().find(|(_, c)| !c.is_integer()) {
            return Verdict::Fail { first_difference: format!("Ω at {d}, q^{n}: {}", fmt_q(c)) };
        }
    }
    Verdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn series(terms: &[(i64, i64)], top: i64) -> QSeries {
        let mut s = QSeries::zero_up_to(top);
        for &(n, c) in terms {
            s.add_coeff(n, q(c));
        }
        s
    }

    #[test]
    fn character_examples() {
        let no_loop = Quiver::g_loop(0, vec![]);
        let c = coha_character(&no_loop, &DimVector::new(vec![1]), 5).unwrap();
        assert_eq!(c, series(&[(1, 1), (3, 1), (5, 1)], 5));
        let jordan = Quiver::jordan();
        let c = coha_character(&jordan, &DimVector::new(vec![1]), 4).unwrap();
        assert_eq!(c, series(&[(0, 1), (2, 1), (4, 1)], 4));
        let c = coha_character(&jordan, &DimVector::new(vec![0]), 4).unwrap();
        assert_eq!(c, series(&[(0, 1)], 4));
    }

    #[test]
    fn adams_is_multiplicative_in_k() {
        let s = series(&[(-3, 2), (1, -1), (2, 5)], 4);
        assert_eq!(s.adams(2).adams(3), s.adams(6));
    }

    #[test]
    fn no_loop_has_one_tower() {
        let no_loop = Quiver::g_loop(0, vec![]);
        let omega = bps_invariants(&no_loop, 4, 20).unwrap();
        assert_eq!(omega[&DimVector::new(vec![1])], series(&[(1, 1)], 20));
        for d in 2..=4 {
            assert!(omega[&DimVector::new(vec![d])].is_zero());
        }
    }

    #[test]
    fn jordan_reconstructs() {
        let jordan = Quiver::jordan();
        assert!(check_reconstruction(&jordan, 3, 12).unwrap().is_pass());
        let omega = bps_invariants(&jordan, 3, 12).unwrap();
        assert!(omega.values().all(|s| s.is_integral() && s.has_nonnegative_coefficients()));
    }

    #[test]
    fn non_symmetric_rejected() {
        assert!(bps_invariants(&Quiver::a_n(2), 2, 4).is_err());
    }

    #[test]
    fn mobius_values() {
        let m: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(m, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
