//! Equivariant cohomology of the moduli stacks `M_{Q,d}`: symmetric
//! polynomials in chern roots, the free tautological ring on the chern
//! characters `γ_{i,r}`, and the structure maps between them.
//!
//! Chern roots on tensor leg `L` are the variables `x[L,i,α]`; a plain
//! class lives on leg 1. Tensor classes are ordinary polynomials that mix
//! several legs.

use alloc::format;
use alloc::vec::Vec;

use crate::polyalg::{factorial, q, Poly, Var};
use crate::quiver::{DimVector, Quiver};
use crate::AlgError;

/// An element of `H*_T(M_{Q,d})`: a polynomial in the leg-1 chern roots
/// `x_{i,α}`, `α ≤ d_i`, symmetric per vertex, with `ℏ` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub dim: DimVector,
    pub poly: Poly,
}

impl CohClass {
    pub fn new(dim: DimVector, poly: Poly) -> Result<Self, AlgError> {
        for v in poly.vars() {
            match v {
                Var::Hbar(_) => {}
                Var::Root { leg: 1, vertex, index }
                    if (vertex as usize) < dim.len() && index >= 1 && index as u32 <= dim.get(vertex as usize) => {}
                other => {
                    return Err(AlgError::DimensionMismatch(format!("variable {other} does not belong to dimension {dim}")))
                }
            }
        }
        if !is_symmetric(&poly, 1, &dim) {
            return Err(AlgError::Unsupported(format!("class {poly} is not symmetric at {dim}")));
        }
        Ok(CohClass { dim, poly })
    }

    pub fn one(dim: DimVector) -> Self {
        CohClass { dim, poly: Poly::one() }
    }

    /// The class moved to tensor leg `leg`.
    pub fn on_leg(&self, leg: u8) -> Poly {
        move_leg(&self.poly, 1, leg)
    }

    /// Cohomological degree of a homogeneous monomial of polynomial degree `deg`.
    pub fn degree_of(q: &Quiver, d: &DimVector, deg: u32) -> i64 {
        2 * deg as i64 - q.chi(d, d)
    }
}

/// Chern root `x_{i,α}` on a leg.
pub fn root(leg: u8, vertex: usize, index: usize) -> Poly {
    Poly::var(Var::root(leg, vertex, index))
}

/// Power sum `Σ_α x_{i,α}^r` on a leg.
pub fn power_sum(leg: u8, vertex: usize, r: u32, d: &DimVector) -> Poly {
    let mut p = Poly::zero();
    for a in 1..=d.get(vertex) as usize {
        p += &root(leg, vertex, a).pow(r);
    }
    p
}

/// Elementary symmetric polynomial `e_k` in the roots of one vertex.
pub fn elementary(leg: u8, vertex: usize, k: u32, d: &DimVector) -> Poly {
    let n = d.get(vertex) as usize;
    // e_k of x_1..x_n via the generating product ∏(1 + x_a t)
    let mut coeffs = alloc::vec![Poly::zero(); n + 1];
    coeffs[0] = Poly::one();
    for a in 1..=n {
        let x = root(leg, vertex, a);
        for j in (1..=a).rev() {
            let add = &coeffs[j - 1] * &x;
            coeffs[j] += &add;
        }
    }
    coeffs.get(k as usize).cloned().unwrap_or_default()
}

/// Whether `p` is symmetric in `x_{leg,i,1..d_i}` for each vertex `i`,
/// tested on adjacent transpositions.
pub fn is_symmetric(p: &Poly, leg: u8, d: &DimVector) -> bool {
    for i in 0..d.len() {
        for a in 1..d.get(i) as usize {
            let swapped = p.rename(&|v| match v {
                Var::Root { leg: l, vertex, index } if l == leg && vertex as usize == i => {
                    let index = index as usize;
                    if index == a {
                        Var::root(l, i, a + 1)
                    } else if index == a + 1 {
                        Var::root(l, i, a)
                    } else {
                        v
                    }
                }
                _ => v,
            });
            if swapped != *p {
                return false;
            }
        }
    }
    true
}

/// Renames the roots and tautological generators of one leg.
pub fn move_leg(p: &Poly, from: u8, to: u8) -> Poly {
    if from == to {
        return p.clone();
    }
    p.rename(&|v| relabel(v, &|l| if l == from { to } else { l }))
}

/// Renames legs by an arbitrary map.
pub fn relabel_legs(p: &Poly, f: &dyn Fn(u8) -> u8) -> Poly {
    p.rename(&|v| relabel(v, f))
}

fn relabel(v: Var, f: &dyn Fn(u8) -> u8) -> Var {
    match v {
        Var::Root { leg, vertex, index } => Var::Root { leg: f(leg), vertex, index },
        Var::Gamma { leg, vertex, r } => Var::Gamma { leg: f(leg), vertex, r },
        other => other,
    }
}

/// `⊕*` on one leg: the roots of `leg` at dimension `d₁+d₂` are read as the
/// first `d₁` roots on leg `a` followed by `d₂` roots on leg `b`.
pub fn split_leg(p: &Poly, leg: u8, d1: &DimVector, (a, b): (u8, u8)) -> Poly {
    p.rename(&|v| match v {
        Var::Root { leg: l, vertex, index } if l == leg => {
            let k = d1.get(vertex as usize) as u16;
            if index <= k {
                Var::Root { leg: a, vertex, index }
            } else {
                Var::Root { leg: b, vertex, index: index - k }
            }
        }
        other => other,
    })
}

/// `⊕*: H*(M_{d₁+d₂}) → H*(M_{d₁}) ⊗ H*(M_{d₂})` on legs 1 and 2.
pub fn direct_sum_pullback(a: &CohClass, d1: &DimVector, d2: &DimVector) -> Result<Poly, AlgError> {
    if d1.len() != a.dim.len() || d2.len() != a.dim.len() || &(d1 + d2) != &a.dim {
        return Err(AlgError::DimensionMismatch(format!("{} is not {} + {}", a.dim, d1, d2)));
    }
    Ok(split_leg(&a.poly, 1, d1, (1, 2)))
}

/// `act*`: every root on `leg` is translated, `x ↦ x + shift`.
pub fn act_on_leg(p: &Poly, leg: u8, shift: &Poly) -> Poly {
    p.subst(&|v| match v {
        Var::Root { leg: l, .. } if l == leg => Some(&Poly::var(v) + shift),
        _ => None,
    })
}

/// `act*_z(a)` with `z` a spectral variable.
pub fn act_pullback(a: &CohClass, slot: Var) -> Poly {
    act_on_leg(&a.poly, 1, &Poly::var(slot))
}

/// Tautological generator `γ_{i,r}` on a leg.
pub fn gamma(leg: u8, vertex: usize, r: usize) -> Poly {
    Poly::var(Var::gamma(leg, vertex, r))
}

/// Chern character `ch_r = (1/r!)·Σ_α x_{i,α}^r`; `ch_0` is the rank.
pub fn chern_character(leg: u8, vertex: usize, r: u32, d: &DimVector) -> Poly {
    if r == 0 {
        return Poly::int(d.get(vertex) as i64);
    }
    power_sum(leg, vertex, r, d).scale(&(q(1) / factorial(r)))
}

/// Specialises the tautological generators of leg `leg` to dimension `d`,
/// landing in the roots of the same leg.
pub fn taut_specialize_leg(h: &Poly, leg: u8, d: &DimVector) -> Poly {
    h.subst(&|v| match v {
        Var::Gamma { leg: l, vertex, r } if l == leg => Some(chern_character(leg, vertex as usize, r as u32, d)),
        _ => None,
    })
}

/// `γ_{i,r} ↦ ch_r(E_{i,d})` on leg 1.
pub fn taut_specialize(h: &Poly, d: &DimVector) -> CohClass {
    CohClass { dim: d.clone(), poly: taut_specialize_leg(h, 1, d) }
}

/// The cocommutative coproduct of the tautological ring: every `γ_{i,r}`
/// (including the rank) is primitive. Leg 1 maps to legs 1 and 2.
pub fn taut_coproduct(h: &Poly) -> Poly {
    h.subst(&|v| match v {
        Var::Gamma { leg: 1, vertex, r } => {
            Some(&gamma(1, vertex as usize, r as usize) + &gamma(2, vertex as usize, r as usize))
        }
        _ => None,
    })
}

/// Translation `γ_{i,r} ↦ Σ_{k≤r} (z^k/k!)·γ_{i,r−k}` on a leg.
pub fn taut_translate_leg(h: &Poly, leg: u8, shift: &Poly) -> Poly {
    h.subst(&|v| match v {
        Var::Gamma { leg: l, vertex, r } if l == leg => {
            let mut acc = Poly::zero();
            let mut zk = Poly::one();
            for k in 0..=r as u32 {
                acc += &(&zk * &gamma(leg, vertex as usize, r as usize - k as usize)).scale(&(q(1) / factorial(k)));
                zk = &zk * shift;
            }
            Some(acc)
        }
        _ => None,
    })
}

pub fn taut_translate(h: &Poly, slot: Var) -> Poly {
    taut_translate_leg(h, 1, &Poly::var(slot))
}

/// Both structure maps of the tautological bialgebra at once.
pub fn taut_coproduct_translate(h: &Poly, slot: Var) -> (Poly, Poly) {
    (taut_coproduct(h), taut_translate(h, slot))
}

/// All pure tensors `Σ a_k ⊗ b_k` of a two-leg polynomial.
pub fn pure_tensors(p: &Poly) -> Vec<(Poly, Poly)> {
    crate::polyalg::split_by_legs(p)
}
