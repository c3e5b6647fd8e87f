//! Characteristic classes of the Ext complex: Euler classes, Ψ-series and
//! the localised, full and tautological R-matrices.
//!
//! Everything here is a product of linear forms, so results are built
//! directly as factored fractions. Functions taking `legs = (a, b)` read
//! the first dimension vector on tensor leg `a` and the second on leg `b`.

use alloc::vec::Vec;

use crate::polyalg::{factorial, ps_exp, q, Frac, Poly, PowerSeries, Var, Q};
use crate::quiver::{DimVector, Quiver};
use crate::AlgError;

fn x(leg: u8, vertex: usize, index: usize) -> Poly {
    Poly::var(Var::root(leg, vertex, index))
}

/// `∏_i ∏_{n,m} (s + x_b,i,m − x_a,i,n)`: the Ext₀ factors.
fn vertex_factors(d1: &DimVector, d2: &DimVector, (a, b): (u8, u8), s: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    for i in 0..d1.len() {
        for n in 1..=d1.get(i) as usize {
            for m in 1..=d2.get(i) as usize {
                out.push(&(s + &x(b, i, m)) - &x(a, i, n));
            }
        }
    }
    out
}

/// `∏_{e:i→j} ∏_{n,m} (s + x_b,j,m − x_a,i,n + sign·wt(e))`.
fn edge_factors(q: &Quiver, d1: &DimVector, d2: &DimVector, (a, b): (u8, u8), s: &Poly, sign: i64) -> Vec<Poly> {
    let mut out = Vec::new();
    for e in q.edges() {
        let w = q.weight_class(&e.weight).scale(&crate::polyalg::q(sign));
        for n in 1..=d1.get(e.src) as usize {
            for m in 1..=d2.get(e.tgt) as usize {
                out.push(&(&(s + &x(b, e.tgt, m)) - &x(a, e.src, n)) + &w);
            }
        }
    }
    out
}

/// The three Euler classes of the Ext complex between `d₁` (leg 1) and `d₂` (leg 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerClasses {
    pub e0: Frac,
    pub e1: Frac,
    pub e1_op: Frac,
}

pub fn euler_classes(q: &Quiver, d1: &DimVector, d2: &DimVector) -> Result<EulerClasses, AlgError> {
    q.check_dim(d1)?;
    q.check_dim(d2)?;
    let zero = Poly::zero();
    let legs = (1, 2);
    let prod = |fs: Vec<Poly>| Frac::product(fs.iter().map(|p| (p, 1)));
    Ok(EulerClasses {
        e0: prod(vertex_factors(d1, d2, legs, &zero)),
        e1: prod(edge_factors(q, d1, d2, legs, &zero, 1)),
        e1_op: prod(edge_factors(&q.opposite(), d1, d2, legs, &zero, 1)),
    })
}

/// `Ψ(Ext_{d₁,d₂}, s) = ∏(s + x'' − x') / ∏_e(s + x''_j − x'_i + wt)`.
pub fn psi_ext(q: &Quiver, d1: &DimVector, d2: &DimVector, legs: (u8, u8), s: &Poly) -> Frac {
    let num = vertex_factors(d1, d2, legs, s);
    let den = edge_factors(q, d1, d2, legs, s, 1);
    Frac::product(num.iter().map(|p| (p, 1)).chain(den.iter().map(|p| (p, -1))))
}

/// `Ψ(σ*Ext^∨_{d₂,d₁}, s) = ∏(s + x'' − x') / ∏_{e:i→j}(s + x''_i − x'_j − wt)`.
pub fn psi_dual_swap(q: &Quiver, d1: &DimVector, d2: &DimVector, legs: (u8, u8), s: &Poly) -> Frac {
    let num = vertex_factors(d1, d2, legs, s);
    let den = edge_factors(&q.opposite(), d1, d2, legs, s, 1);
    Frac::product(num.iter().map(|p| (p, 1)).chain(den.iter().map(|p| (p, -1))))
}

/// `e(Ext) = e(Q₀)/e(Q₁)` between two legs.
pub fn euler_ext(q: &Quiver, d1: &DimVector, d2: &DimVector, legs: (u8, u8)) -> Frac {
    psi_ext(q, d1, d2, legs, &Poly::zero())
}

/// `Ψ(Ext, ±z)` on legs 1, 2.
pub fn psi_series(q: &Quiver, d1: &DimVector, d2: &DimVector, positive: bool) -> Result<Frac, AlgError> {
    q.check_dim(d1)?;
    q.check_dim(d2)?;
    let z = Poly::var(Var::Z);
    let s = if positive { z } else { -&z };
    Ok(psi_ext(q, d1, d2, (1, 2), &s))
}

/// Full R-matrix `Ψ(σ*Ext^∨, z)/Ψ(Ext, z)` between two legs at spectral value `z`.
pub fn r_full(q: &Quiver, d1: &DimVector, d2: &DimVector, legs: (u8, u8), z: &Poly) -> Frac {
    let num = edge_factors(q, d1, d2, legs, z, 1);
    let den = edge_factors(&q.opposite(), d1, d2, legs, z, 1);
    Frac::product(num.iter().map(|p| (p, 1)).chain(den.iter().map(|p| (p, -1))))
}

/// Localised R-matrix `e(Q₁)/e(Q₁ᵒᵖ)`.
pub fn r_loc(q: &Quiver, d1: &DimVector, d2: &DimVector, legs: (u8, u8)) -> Frac {
    r_full(q, d1, d2, legs, &Poly::zero())
}

/// Tautological R-matrix `z^{χ̃(d₁,d₂)}·R(z)`; expands as `1 + O(z⁻¹)`.
pub fn r_taut(q: &Quiver, d1: &DimVector, d2: &DimVector, legs: (u8, u8), z: &Poly) -> Frac {
    let k = q.chi(d1, d2) - q.chi(d2, d1);
    r_full(q, d1, d2, legs, z).mul(&Frac::factor(z, k as i32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RMode {
    Full,
    Localised,
    Tautological,
}

/// The R-matrix of the requested kind on legs 1, 2 (in the variable `z`).
pub fn r_matrix(q: &Quiver, d1: &DimVector, d2: &DimVector, mode: RMode) -> Result<Frac, AlgError> {
    q.check_dim(d1)?;
    q.check_dim(d2)?;
    let z = Poly::var(Var::Z);
    Ok(match mode {
        RMode::Full => r_full(q, d1, d2, (1, 2), &z),
        RMode::Localised => r_loc(q, d1, d2, (1, 2)),
        RMode::Tautological => r_taut(q, d1, d2, (1, 2), &z),
    })
}

fn gamma(leg: u8, vertex: usize, r: usize) -> Poly {
    Poly::var(Var::gamma(leg, vertex, r))
}

/// `ch_k(E'^∨_s ⊠ E''_t ⊗ L_w) = Σ_{a+b+c=k} (−1)^a γ'_{s,a} γ''_{t,b} w^c/c!`.
fn ch_hom(s: usize, t: usize, w: &Poly, k: usize) -> Poly {
    let mut acc = Poly::zero();
    for a in 0..=k {
        for b in 0..=(k - a) {
            let c = k - a - b;
            let sign = if a % 2 == 0 { q(1) } else { q(-1) };
            let coeff = sign / factorial(c as u32);
            let term = &(&gamma(1, s, a) * &gamma(2, t, b)) * &w.pow(c as u32);
            acc += &term.scale(&coeff);
        }
    }
    acc
}

/// `log R_taut` as a power series in `t = z⁻¹` through `t^order`, with
/// coefficients in the tautological generators of legs 1 and 2.
pub fn r_taut_log(q: &Quiver, order: usize) -> Result<PowerSeries, AlgError> {
    if order == 0 {
        return Err(AlgError::Unsupported(alloc::string::String::from("series order must be at least 1")));
    }
    let mut l = alloc::vec![Poly::zero(); order + 1];
    for e in q.edges() {
        let w = q.weight_class(&e.weight);
        let wn = -&w;
        for (k, slot) in l.iter_mut().enumerate().skip(1) {
            // (−1)^{k−1}(k−1)!·[ch_k(E'^∨_s E''_t e^w) − ch_k(E'^∨_t E''_s e^{−w})]
            let mut c: Q = factorial(k as u32 - 1);
            if k % 2 == 0 {
                c = -c;
            }
            let diff = &ch_hom(e.src, e.tgt, &w, k) - &ch_hom(e.tgt, e.src, &wn, k);
            *slot += &diff.scale(&c);
        }
    }
    Ok(l)
}

/// Generic `R_taut = exp(log R_taut)`: coefficient `k` multiplies `z^{−k}`.
pub fn r_taut_generic(q: &Quiver, order: usize) -> Result<PowerSeries, AlgError> {
    let l = r_taut_log(q, order)?;
    Ok(ps_exp(&l, order + 1))
}

/// Specialises a two-leg tautological expression to `(d₁, d₂)`.
pub fn specialize_two_legs(h: &Poly, d1: &DimVector, d2: &DimVector) -> Poly {
    let h = crate::cohomology::taut_specialize_leg(h, 1, d1);
    crate::cohomology::taut_specialize_leg(&h, 2, d2)
}

/// Compares the generic tautological R-matrix, specialised to `(d₁, d₂)`,
/// with the `z⁻¹`-expansion of the componentwise fraction. Returns the first
/// differing order.
pub fn check_r_taut_specialization(
    q: &Quiver,
    generic: &PowerSeries,
    d1: &DimVector,
    d2: &DimVector,
) -> Result<Option<usize>, AlgError> {
    let order = generic.len().saturating_sub(1);
    let z = Poly::var(Var::Z);
    let s = r_taut(q, d1, d2, (1, 2), &z).expand(Var::Z, order as i64)?;
    if s.top().is_some_and(|t| t > 0) {
        return Ok(Some(0));
    }
    for (k, g) in generic.iter().enumerate() {
        let comp = s.coeff(-(k as i64)).expect("within order");
        if specialize_two_legs(g, d1, d2) != comp {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Whether a fraction has no dependence on `ℏ` after setting every `ℏ_k = 0`.
pub fn at_hbar_zero(f: &Frac) -> Result<Frac, AlgError> {
    f.subst(&|v| matches!(v, Var::Hbar(_)).then(Poly::zero))
}

/// `Ψ(V, n·z) = e(γⁿ ⊠ V)`: the Euler class of the Ext complex with leg 1
/// translated by `−n·z`.
pub fn psi_via_euler(q: &Quiver, d1: &DimVector, d2: &DimVector, n: i64) -> Frac {
    let shift = Poly::var(Var::Z).scale(&crate::polyalg::q(-n));
    let e = euler_ext(q, d1, d2, (1, 2));
    e.subst(&|v| match v {
        Var::Root { leg: 1, .. } => Some(&Poly::var(v) + &shift),
        _ => None,
    })
    .expect("translation keeps factors nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::fraction_eq;

    fn d(v: &[u32]) -> DimVector {
        DimVector::new(v.to_vec())
    }

    fn z() -> Poly {
        Poly::var(Var::Z)
    }

    #[test]
    fn euler_class_examples() {
        let j = Quiver::g_loop(1, alloc::vec![2]);
        let e = euler_classes(&j, &d(&[1]), &d(&[1])).unwrap();
        let diff = &x(2, 0, 1) - &x(1, 0, 1);
        assert!(fraction_eq(&e.e0, &Frac::from_poly(&diff)));
        assert!(fraction_eq(&e.e1, &Frac::from_poly(&(&diff + &Poly::var(Var::H)))));
        let a2 = Quiver::a_n(2);
        let e = euler_classes(&a2, &d(&[1, 0]), &d(&[0, 1])).unwrap();
        assert!(fraction_eq(&e.e0, &Frac::one()));
        assert!(fraction_eq(&e.e1, &Frac::from_poly(&(&x(2, 1, 1) - &x(1, 0, 1)))));
        let e = euler_classes(&a2, &d(&[1, 1]), &d(&[0, 0])).unwrap();
        assert!(e.e0 == Frac::one() && e.e1 == Frac::one() && e.e1_op == Frac::one());
    }

    #[test]
    fn psi_examples() {
        let one = d(&[1]);
        assert!(fraction_eq(&psi_series(&Quiver::jordan(), &one, &one, true).unwrap(), &Frac::one()));
        let base = &(&z() + &x(2, 0, 1)) - &x(1, 0, 1);
        let p0 = psi_series(&Quiver::g_loop(0, alloc::vec![]), &one, &one, true).unwrap();
        assert!(fraction_eq(&p0, &Frac::from_poly(&base)));
        let p3 = psi_series(&Quiver::g_loop(3, alloc::vec![]), &one, &one, true).unwrap();
        assert!(fraction_eq(&p3, &Frac::factor(&base, -2)));
    }

    #[test]
    fn r_matrix_examples() {
        let one = d(&[1]);
        let r = r_matrix(&Quiver::g_loop(0, alloc::vec![]), &d(&[2]), &one, RMode::Full).unwrap();
        assert!(fraction_eq(&r, &Frac::one()));
        let j = Quiver::g_loop(1, alloc::vec![2]);
        let base = &(&z() + &x(2, 0, 1)) - &x(1, 0, 1);
        let h = Poly::var(Var::H);
        let expect = Frac::ratio(&(&base + &h), &(&base - &h));
        assert!(fraction_eq(&r_matrix(&j, &one, &one, RMode::Full).unwrap(), &expect));
        assert!(fraction_eq(&r_matrix(&Quiver::jordan(), &one, &one, RMode::Full).unwrap(), &Frac::one()));
    }

    #[test]
    fn loc_translates_to_full() {
        let q = Quiver::a_n(2).triple();
        let (d1, d2) = (d(&[1, 1]), d(&[1, 0]));
        let loc = r_loc(&q, &d1, &d2, (1, 2));
        let moved = loc
            .subst(&|v| match v {
                Var::Root { leg: 2, .. } => Some(&Poly::var(v) + &z()),
                _ => None,
            })
            .unwrap();
        assert!(fraction_eq(&moved, &r_full(&q, &d1, &d2, (1, 2), &z())));
    }

    #[test]
    fn generic_r_taut_specializes() {
        let q = Quiver::a_n(1).triple();
        let g = r_taut_generic(&q, 4).unwrap();
        assert_eq!(g[0], Poly::one());
        for (a, b) in [(1, 1), (2, 1), (1, 2)] {
            assert_eq!(check_r_taut_specialization(&q, &g, &d(&[a]), &d(&[b])).unwrap(), None);
        }
        let at0: Vec<Poly> = g.iter().map(|c| c.subst(&|v| matches!(v, Var::Hbar(_)).then(Poly::zero))).collect();
        assert_eq!(at0[0], Poly::one());
        assert!(at0[1..].iter().all(Poly::is_zero));
    }

    #[test]
    fn generic_r_taut_nonsymmetric() {
        let q = Quiver::a_n(2);
        let g = r_taut_generic(&q, 3).unwrap();
        for (a, b) in [([1, 0], [0, 1]), ([1, 1], [1, 0]), ([0, 1], [1, 1])] {
            assert_eq!(check_r_taut_specialization(&q, &g, &d(&a), &d(&b)).unwrap(), None);
        }
    }
}
