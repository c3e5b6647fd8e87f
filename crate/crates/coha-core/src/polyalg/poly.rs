use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{fmt_q, Var, Q};

/// A monomial: variables in increasing order with positive exponents.
///
/// Monomials are ordered graded-lexicographically (total degree first, then
/// a higher exponent on an earlier variable wins), so the last key of a
/// polynomial's map is its leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(Vec<(Var, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Mono(alloc::vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Mono(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp_of(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Mono(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    /// Removes `v` and returns its exponent together with the rest.
    pub fn split_off(&self, v: Var) -> (u32, Mono) {
        let e = self.exp_of(v);
        let rest = Mono(self.0.iter().copied().filter(|&(w, _)| w != v).collect());
        (e, rest)
    }

    pub fn rename(&self, f: &dyn Fn(Var) -> Var) -> Mono {
        Mono::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)).collect())
    }

    fn lex_cmp(&self, other: &Mono) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
            }
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(c, Mono::one())
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(super::q(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Q::one(), Mono::var(v))
    }

    pub fn term(c: Q, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Q)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&Mono::one()).cloned().unwrap_or_else(Q::zero)
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp_of(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> alloc::collections::BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(v, _)| v)).collect()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients with respect to `v`: `self = Σ_k c_k v^k`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn coeff_of(&self, v: Var, k: u32) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.split_off(v);
            (e == k).then(|| (rest, c.clone()))
        }))
    }

    /// Renames variables monomial by monomial (no expansion needed).
    pub fn rename(&self, f: &dyn Fn(Var) -> Var) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(f), c.clone())))
    }

    /// Substitutes `v ↦ f(v)` wherever `f` returns `Some`.
    pub fn subst(&self, f: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut images: BTreeMap<Var, Option<Poly>> = BTreeMap::new();
        let mut powers: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in m.pairs() {
                let img = images.entry(v).or_insert_with(|| f(v));
                match img {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        factor = &factor * &*pw;
                    }
                }
            }
            let kept = Mono(kept);
            for (n, a) in factor.terms {
                out.add_term(n.mul(&kept), a);
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let t = Poly::term(qc.clone(), qm.clone());
            rem -= &(&t * d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits into (leading coefficient, monic part).
    pub fn monic(&self) -> (Q, Poly) {
        match self.leading() {
            None => (Q::zero(), Poly::zero()),
            Some((_, c)) => {
                let c = c.clone();
                let inv = Q::one() / &c;
                (c, self.scale(&inv))
            }
        }
    }

    /// True if every variable satisfies `pred`.
    pub fn only_vars(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.terms.keys().all(|m| m.pairs().iter().all(|&(v, _)| pred(v)))
    }

    /// Canonical text: terms by decreasing graded-lex order,
    /// coefficients as `p/q`.
    pub fn to_canonical(&self) -> String {
        use core::fmt::Write;
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if m.is_one() {
                let _ = write!(s, "({})", fmt_q(c));
            } else if c.is_one() {
                let _ = write!(s, "{m}");
            } else {
                let _ = write!(s, "({})*{m}", fmt_q(c));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl From<Q> for Poly {
    fn from(c: Q) -> Self {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl<'a> AddAssign<&'a Poly> for Poly {
    fn add_assign(&mut self, rhs: &'a Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> SubAssign<&'a Poly> for Poly {
    fn sub_assign(&mut self, rhs: &'a Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<'a> Neg for &'a Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Realizes a two-leg polynomial as a sum of pure tensors `Σ a_k ⊗ b_k`.
///
/// Variables without a leg (ℏ's and spectral slots) go to leg 1.
/// Pairs are listed by increasing leg-2 monomial.
pub fn split_by_legs(p: &Poly) -> Vec<(Poly, Poly)> {
    let mut groups: BTreeMap<Mono, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (second, first): (Vec<_>, Vec<_>) =
            m.pairs().iter().copied().partition(|&(v, _)| v.leg() == Some(2));
        groups.entry(Mono(second)).or_default().add_term(Mono(first), c.clone());
    }
    groups.into_iter().map(|(m2, a)| (a, Poly::term(Q::one(), m2))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{q, qf};

    fn x(l: u8, i: usize) -> Poly {
        Poly::var(Var::root(l, 0, i))
    }

    #[test]
    fn grlex_leading_term() {
        let p = &(&x(1, 1) * &x(1, 1)) + &x(1, 2);
        assert_eq!(p.leading().unwrap().0, &Mono::from_pairs(alloc::vec![(Var::root(1, 0, 1), 2)]));
    }

    #[test]
    fn exact_division() {
        let a = &x(1, 1) - &x(1, 2);
        let b = &x(1, 1) + &Poly::var(Var::Z);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!((&prod + &Poly::one()).div_exact(&a), None);
    }

    #[test]
    fn substitution_expands() {
        let p = x(1, 1).pow(2);
        let s = p.subst(&|v| (v == Var::root(1, 0, 1)).then(|| &x(1, 1) + &Poly::var(Var::Z)));
        let z = Poly::var(Var::Z);
        let expect = &(&x(1, 1).pow(2) + &(&x(1, 1) * &z).scale(&q(2))) + &z.pow(2);
        assert_eq!(s, expect);
    }

    #[test]
    fn canonical_text() {
        let p = &x(1, 2).scale(&qf(-1, 2)) * &Poly::var(Var::H);
        assert_eq!(p.to_canonical(), "(-1/2)*h*x[1,1,2]");
        assert_eq!(Poly::zero().to_canonical(), "0");
    }

    #[test]
    fn split_examples() {
        let s = (&x(1, 1) + &x(2, 1)).pow(2);
        let parts = split_by_legs(&s);
        assert_eq!(parts.len(), 3);
        let back = parts.iter().fold(Poly::zero(), |acc, (a, b)| &acc + &(a * b));
        assert_eq!(back, s);
        let h = &Poly::var(Var::H) * &x(2, 1);
        assert_eq!(split_by_legs(&h), alloc::vec![(Poly::var(Var::H), x(2, 1))]);
        assert_eq!(split_by_legs(&Poly::one()), alloc::vec![(Poly::one(), Poly::one())]);
    }
}
