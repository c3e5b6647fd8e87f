use core::fmt;

/// Spectral slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spectral {
    Z,
    W,
    U,
}

/// The fixed variable universe. The derived order is the canonical order
/// used for serialization: ℏ's, then spectral slots, then chern roots,
/// then tautological generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Equivariant parameter ℏ_k (0-based).
    Hbar(u8),
    Spectral(Spectral),
    /// Chern root `x_{vertex, index}` on tensor leg `leg` (leg and index 1-based).
    Root { leg: u8, vertex: u16, index: u16 },
    /// Tautological generator γ_{vertex, r} on tensor leg `leg`;
    /// `r = 0` is the formal rank symbol.
    Gamma { leg: u8, vertex: u16, r: u16 },
}

impl Var {
    pub const Z: Var = Var::Spectral(Spectral::Z);
    pub const W: Var = Var::Spectral(Spectral::W);
    pub const U: Var = Var::Spectral(Spectral::U);
    pub const H: Var = Var::Hbar(0);

    pub fn root(leg: u8, vertex: usize, index: usize) -> Var {
        Var::Root { leg, vertex: vertex as u16, index: index as u16 }
    }

    pub fn gamma(leg: u8, vertex: usize, r: usize) -> Var {
        Var::Gamma { leg, vertex: vertex as u16, r: r as u16 }
    }

    /// Tensor leg of the variable, if it lives on one.
    pub fn leg(&self) -> Option<u8> {
        match *self {
            Var::Root { leg, .. } | Var::Gamma { leg, .. } => Some(leg),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::Hbar(0) => write!(f, "h"),
            Var::Hbar(k) => write!(f, "h{}", k + 1),
            Var::Spectral(Spectral::Z) => write!(f, "z"),
            Var::Spectral(Spectral::W) => write!(f, "w"),
            Var::Spectral(Spectral::U) => write!(f, "u"),
            Var::Root { leg, vertex, index } => write!(f, "x[{},{},{}]", leg, vertex + 1, index),
            Var::Gamma { leg, vertex, r } => write!(f, "g[{},{},{}]", leg, vertex + 1, r),
        }
    }
}
