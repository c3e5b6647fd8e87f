//! Quiver combinatorics: vertices, weighted edges, dimension vectors, the
//! Euler form and everything derived from it.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use crate::polyalg::{qf, Poly, Var};
use crate::AlgError;

/// Where an edge of a tripled quiver came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeRole {
    /// An edge of the original quiver.
    Base,
    /// The reversed copy `e*` of a base edge.
    Dual,
    /// The vertex loop `ω_i`.
    Omega,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub tgt: usize,
    /// Torus weight, one integer per torus coordinate.
    pub weight: Vec<i64>,
    pub role: EdgeRole,
}

impl Edge {
    pub fn new(src: usize, tgt: usize, weight: Vec<i64>) -> Self {
        Edge { src, tgt, weight, role: EdgeRole::Base }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    torus_rank: usize,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>, torus_rank: usize) -> Result<Self, AlgError> {
        for (k, v) in vertices.iter().enumerate() {
            if vertices[..k].contains(v) {
                return Err(AlgError::InvalidQuiver(format!("duplicate vertex id {v:?}")));
            }
        }
        for (k, e) in edges.iter().enumerate() {
            if e.src >= vertices.len() || e.tgt >= vertices.len() {
                return Err(AlgError::InvalidQuiver(format!("edge {k} has an undeclared endpoint")));
            }
            if e.weight.len() != torus_rank {
                return Err(AlgError::InvalidQuiver(format!(
                    "edge {k} has weight of length {} but torus rank is {torus_rank}",
                    e.weight.len()
                )));
            }
        }
        if torus_rank > u8::MAX as usize {
            return Err(AlgError::InvalidQuiver(String::from("torus rank too large")));
        }
        Ok(Quiver { vertices, edges, torus_rank })
    }

    /// Builds a quiver from string ids.
    pub fn from_ids(
        vertices: Vec<String>,
        edges: &[(String, String, Vec<i64>)],
        torus_rank: usize,
    ) -> Result<Self, AlgError> {
        let find = |id: &str| {
            vertices
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| AlgError::InvalidQuiver(format!("edge endpoint {id:?} is not a declared vertex")))
        };
        let edges = edges
            .iter()
            .map(|(s, t, w)| Ok(Edge::new(find(s)?, find(t)?, w.clone())))
            .collect::<Result<Vec<_>, AlgError>>()?;
        Quiver::new(vertices, edges, torus_rank)
    }

    /// One vertex with `g` loops, each of the given weight.
    pub fn g_loop(g: usize, weight: Vec<i64>) -> Self {
        let r = weight.len();
        let edges = (0..g).map(|_| Edge::new(0, 0, weight.clone())).collect();
        Quiver::new(vec!["1".to_string()], edges, r).expect("valid")
    }

    /// The Jordan quiver with an untwisted loop.
    pub fn jordan() -> Self {
        Quiver::g_loop(1, Vec::new())
    }

    /// Linearly oriented `A_n`: `1 → 2 → … → n`, torus rank 0.
    pub fn a_n(n: usize) -> Self {
        let vertices = (1..=n).map(|k| k.to_string()).collect();
        let edges = (1..n).map(|k| Edge::new(k - 1, k, Vec::new())).collect();
        Quiver::new(vertices, edges, 0).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// `a_ij`: number of edges `i → j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.edges.iter().filter(|e| e.src == i && e.tgt == j).count()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|i| (0..n).all(|j| self.arrow_count(i, j) == self.arrow_count(j, i)))
    }

    /// Equivariant class of an edge weight: `Σ_k n_k·ℏ_k/2`.
    pub fn weight_class(&self, weight: &[i64]) -> Poly {
        let mut p = Poly::zero();
        for (k, &n) in weight.iter().enumerate() {
            if n != 0 {
                p += &Poly::var(Var::Hbar(k as u8)).scale(&qf(n, 2));
            }
        }
        p
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<(), AlgError> {
        if d.len() != self.vertex_count() {
            return Err(AlgError::DimensionMismatch(format!(
                "dimension vector {d} has {} entries, quiver has {} vertices",
                d.len(),
                self.vertex_count()
            )));
        }
        Ok(())
    }

    /// `χ(d,e) = Σ d_i e_i − Σ_{i→j} d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64, AlgError> {
        self.check_dim(d)?;
        self.check_dim(e)?;
        Ok(self.chi(d, e))
    }

    /// Unchecked Euler form.
    pub fn chi(&self, d: &DimVector, e: &DimVector) -> i64 {
        let diag: i64 = d.0.iter().zip(&e.0).map(|(&a, &b)| a as i64 * b as i64).sum();
        let off: i64 = self.edges.iter().map(|ed| d.0[ed.src] as i64 * e.0[ed.tgt] as i64).sum();
        diag - off
    }

    /// `χ̃(d,e) = χ(d,e) − χ(e,d)`.
    pub fn chi_tilde(&self, d: &DimVector, e: &DimVector) -> Result<i64, AlgError> {
        Ok(self.euler_form(d, e)? - self.euler_form(e, d)?)
    }

    /// `(τ, ψ)` mod 2 with `τ = χ(d,d)χ(e,e) + χ(d,e)` and `ψ = χ(d,e)`.
    pub fn sign_twists(&self, d: &DimVector, e: &DimVector) -> Result<(u8, u8), AlgError> {
        let chi = self.euler_form(d, e)?;
        let tau = self.chi(d, d) * self.chi(e, e) + chi;
        Ok((tau.rem_euclid(2) as u8, chi.rem_euclid(2) as u8))
    }

    /// A bilinear solution of `ψ + ψᵒᵖ ≡ τ` for symmetric quivers:
    /// `ψ(d,e) = Σ_{i<j} T_ij d_i e_j` with `T_ij = χ_ii χ_jj + χ_ij`.
    pub fn psi_triangular(&self, d: &DimVector, e: &DimVector) -> u8 {
        let n = self.vertex_count();
        let chi = |i: usize, j: usize| self.chi(&DimVector::unit(n, i), &DimVector::unit(n, j));
        let mut acc = 0i64;
        for i in 0..n {
            for j in (i + 1)..n {
                acc += (chi(i, i) * chi(j, j) + chi(i, j)) * d.get(i) as i64 * e.get(j) as i64;
            }
        }
        acc.rem_euclid(2) as u8
    }

    /// Whether `ψ = χ` solves `ψ + ψᵒᵖ ≡ τ` on all pairs of total size `≤ bound`.
    /// Returns the first offending pair otherwise.
    pub fn psi_solves_tau(&self, bound: u32) -> Result<(), (DimVector, DimVector)> {
        let dims = DimVector::all_up_to(self.vertex_count(), bound);
        for d in &dims {
            for e in &dims {
                let (tau, psi) = self.sign_twists(d, e).expect("dims match");
                let (_, psi_op) = self.sign_twists(e, d).expect("dims match");
                if (psi + psi_op) % 2 != tau {
                    return Err((d.clone(), e.clone()));
                }
            }
        }
        Ok(())
    }

    /// `c_ij = 2δ_ij − a_ij − a_ji`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let delta = if i == j { 2 } else { 0 };
                        delta - self.arrow_count(i, j) as i64 - self.arrow_count(j, i) as i64
                    })
                    .collect()
            })
            .collect()
    }

    /// The opposite quiver with negated weights.
    pub fn opposite(&self) -> Quiver {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                src: e.tgt,
                tgt: e.src,
                weight: e.weight.iter().map(|w| -w).collect(),
                role: e.role,
            })
            .collect();
        Quiver { vertices: self.vertices.clone(), edges, torus_rank: self.torus_rank }
    }

    /// The tripled quiver: every base edge `e`, its reverse `e*` and a loop
    /// `ω_i` at each vertex, with rank-one weights `wt(e) = wt(e*) = 1` and
    /// `wt(ω_i) = −2`, so that the cubic potential has weight zero.
    pub fn triple(&self) -> Quiver {
        let mut edges = Vec::with_capacity(2 * self.edges.len() + self.vertex_count());
        for e in &self.edges {
            edges.push(Edge { src: e.src, tgt: e.tgt, weight: vec![1], role: EdgeRole::Base });
            edges.push(Edge { src: e.tgt, tgt: e.src, weight: vec![1], role: EdgeRole::Dual });
        }
        for i in 0..self.vertex_count() {
            edges.push(Edge { src: i, tgt: i, weight: vec![-2], role: EdgeRole::Omega });
        }
        Quiver { vertices: self.vertices.clone(), edges, torus_rank: 1 }
    }

    /// Whether this quiver was produced by [`Quiver::triple`].
    pub fn is_tripled(&self) -> bool {
        let base: Vec<&Edge> = self.edges.iter().filter(|e| e.role == EdgeRole::Base).collect();
        self.torus_rank == 1 && self.edges.len() == 2 * base.len() + self.vertex_count() && {
            let b = self.base_quiver();
            b.triple() == *self
        }
    }

    /// The quiver made of the base edges only (torus rank 0).
    pub fn base_quiver(&self) -> Quiver {
        let edges = self
            .edges
            .iter()
            .filter(|e| e.role == EdgeRole::Base)
            .map(|e| Edge::new(e.src, e.tgt, Vec::new()))
            .collect();
        Quiver { vertices: self.vertices.clone(), edges, torus_rank: 0 }
    }
}

/// A dimension vector, indexed by vertex declaration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(v: Vec<u32>) -> Self {
        DimVector(v)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The unit vector `δ_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if self.len() != other.len() {
            return None;
        }
        self.0.iter().zip(&other.0).map(|(&a, &b)| a.checked_sub(b)).collect::<Option<Vec<_>>>().map(DimVector)
    }

    /// All `e ≤ self` componentwise, in lexicographic order.
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![DimVector(Vec::new())];
        for &k in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
            for v in &out {
                for a in 0..=k {
                    let mut w = v.0.clone();
                    w.push(a);
                    next.push(DimVector(w));
                }
            }
            out = next;
        }
        out
    }

    /// All dimension vectors on `n` vertices with total size `≤ bound`.
    pub fn all_up_to(n: usize, bound: u32) -> Vec<DimVector> {
        let mut out: Vec<DimVector> = DimVector(vec![bound; n])
            .sub_vectors()
            .into_iter()
            .filter(|d| d.total() <= bound)
            .collect();
        out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        out
    }

    /// Ordered pairs `(d₁, d₂)` with `d₁ + d₂ = self`.
    pub fn splits(&self) -> Vec<(DimVector, DimVector)> {
        self.sub_vectors()
            .into_iter()
            .map(|a| {
                let b = self.checked_sub(&a).expect("sub vector");
                (a, b)
            })
            .collect()
    }
}

impl Add for &DimVector {
    type Output = DimVector;

    fn add(self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len(), "dimension vectors over different vertex sets");
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn euler_form_examples() {
        let j = Quiver::jordan();
        assert_eq!(j.euler_form(&dv(&[1]), &dv(&[1])), Ok(0));
        let a2 = Quiver::a_n(2);
        assert_eq!(a2.euler_form(&dv(&[1, 0]), &dv(&[0, 1])), Ok(-1));
        assert_eq!(a2.euler_form(&dv(&[0, 1]), &dv(&[1, 0])), Ok(0));
        assert_eq!(a2.euler_form(&dv(&[2, 3]), &dv(&[0, 0])), Ok(0));
        assert!(a2.euler_form(&dv(&[1]), &dv(&[0, 1])).is_err());
    }

    #[test]
    fn sign_twist_examples() {
        assert_eq!(Quiver::jordan().sign_twists(&dv(&[1]), &dv(&[1])), Ok((0, 0)));
        assert_eq!(Quiver::g_loop(0, vec![]).sign_twists(&dv(&[1]), &dv(&[1])), Ok((0, 1)));
        assert_eq!(Quiver::g_loop(0, vec![]).sign_twists(&dv(&[3]), &dv(&[0])), Ok((0, 0)));
    }

    #[test]
    fn triangular_psi_solves_tau() {
        for q in [Quiver::a_n(2).triple(), Quiver::a_n(3).triple(), Quiver::g_loop(2, vec![])] {
            for d in DimVector::all_up_to(q.vertex_count(), 3) {
                for e in DimVector::all_up_to(q.vertex_count(), 3) {
                    let (tau, _) = q.sign_twists(&d, &e).unwrap();
                    assert_eq!((q.psi_triangular(&d, &e) + q.psi_triangular(&e, &d)) % 2, tau);
                }
            }
        }
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(Quiver::a_n(2).cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(Quiver::a_n(1).cartan_matrix(), vec![vec![2]]);
        assert_eq!(Quiver::jordan().cartan_matrix(), vec![vec![0]]);
    }

    #[test]
    fn tripling() {
        let t = Quiver::a_n(1).triple();
        assert_eq!(t.edges().len(), 1);
        assert_eq!(t.edges()[0].weight, vec![-2]);
        let t2 = Quiver::a_n(2).triple();
        assert!(t2.is_symmetric() && t2.is_tripled());
        assert_eq!(t2.base_quiver(), Quiver::a_n(2));
        let empty = Quiver::new(Vec::new(), Vec::new(), 0).unwrap().triple();
        assert_eq!(empty.vertex_count(), 0);
        assert!(empty.edges().is_empty());
        assert!(!Quiver::jordan().is_tripled());
    }

    #[test]
    fn undeclared_endpoint_rejected() {
        let r = Quiver::from_ids(vec!["a".into()], &[("a".into(), "b".into(), vec![])], 0);
        assert!(matches!(r, Err(AlgError::InvalidQuiver(_))));
        let r = Quiver::from_ids(vec!["a".into()], &[("a".into(), "a".into(), vec![1])], 0);
        assert!(matches!(r, Err(AlgError::InvalidQuiver(_))));
    }

    #[test]
    fn splits_and_enumeration() {
        assert_eq!(dv(&[1, 1]).splits().len(), 4);
        assert_eq!(DimVector::all_up_to(2, 2).len(), 6);
    }
}
