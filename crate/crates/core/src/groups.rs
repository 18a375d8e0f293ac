//! Finite permutation groups, cyclic groups and wreath products, with orbit
//! canonicalization for equality in quotients.
//!
//! Wreath products `Σ_n ≀ H` multiply by
//! `(σ; h_1..h_n)(τ; k_1..k_n) = (στ; h_{τ(1)}k_1, .., h_{τ(n)}k_n)`.
//! With this law an element acts on the left of an `n`-tuple by first acting
//! on each coordinate with its `H` member and then moving coordinate `i` to
//! slot `σ(i)`.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GroupError;

/// A permutation of `{0, .., n-1}`, stored by its images.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Build from the usual one-line notation with images in `1..=n`.
    pub fn from_one_line(one_based: &[usize]) -> Result<Perm, GroupError> {
        if one_based.contains(&0) {
            return Err(GroupError::NotAPermutation(one_based.to_vec()));
        }
        Perm::from_images(one_based.iter().map(|&i| i - 1).collect())
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// The cycle `(1 2 .. n)`, sending `i` to `i + 1 mod n`.
    pub fn long_cycle(n: usize) -> Perm {
        Perm {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out).expect("same degree");
        }
        out
    }

    /// If `self = (1 .. n)^k`, the exponent `k` in `[0, n)`.
    pub fn cyclic_exponent(&self) -> Option<usize> {
        let n = self.degree();
        if n == 0 {
            return Some(0);
        }
        let k = self.images[0];
        (0..n).all(|i| self.images[i] == (i + k) % n).then_some(k)
    }

    /// Right action on a tuple: `(x·σ)_i = x_{σ(i)}`.
    pub fn permute_right<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(xs.len(), self.degree(), "tuple length must equal degree");
        self.images.iter().map(|&j| xs[j].clone()).collect()
    }

    /// Left action on a tuple: entry `i` moves to slot `σ(i)`.
    pub fn permute_left<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(xs.len(), self.degree(), "tuple length must equal degree");
        self.inverse().permute_right(xs)
    }

    /// Block sum `τ_1 ⊕ .. ⊕ τ_n`.
    pub fn block_sum(parts: &[Perm]) -> Perm {
        let mut images = Vec::new();
        let mut offset = 0;
        for p in parts {
            images.extend(p.images.iter().map(|&i| i + offset));
            offset += p.degree();
        }
        Perm { images }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Perm {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            images.swap(i, j);
        }
        Perm { images }
    }

    /// All permutations of degree `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n)
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .expect("pivot");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.one_line())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Perm, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

/// The permutation of `Σ_j` (`j = Σ sizes`) that moves block `i` of the given
/// sizes to block slot `σ(i)`, keeping the order inside each block.
pub fn block_permutation(sigma: &Perm, sizes: &[usize]) -> Result<Perm, GroupError> {
    if sizes.len() != sigma.degree() {
        return Err(GroupError::BlockCount {
            blocks: sizes.len(),
            degree: sigma.degree(),
        });
    }
    let n = sizes.len();
    let mut new_sizes = vec![0; n];
    for (i, &s) in sizes.iter().enumerate() {
        new_sizes[sigma.apply(i)] = s;
    }
    let new_offsets = offsets(&new_sizes);
    let mut images = Vec::with_capacity(sizes.iter().sum());
    for (i, &s) in sizes.iter().enumerate() {
        let base = new_offsets[sigma.apply(i)];
        images.extend(base..base + s);
    }
    Ok(Perm { images })
}

/// Cycle blocks of the given sizes by a power of the long cycle.
pub fn block_cycle_perm(sizes: &[usize], alpha: &Perm) -> Result<Perm, GroupError> {
    if alpha.cyclic_exponent().is_none() {
        return Err(GroupError::NotCyclic);
    }
    block_permutation(alpha, sizes)
}

pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in sizes {
        out.push(acc);
        acc += s;
    }
    out
}

/// Group elements that know how to multiply among themselves.
pub trait GroupElem: Clone + Eq + Ord + fmt::Debug {
    fn op(&self, other: &Self) -> Result<Self, GroupError>;
    fn inv(&self) -> Self;
    /// The identity of the group containing `self`.
    fn unit_like(&self) -> Self;
}

impl GroupElem for Perm {
    fn op(&self, other: &Perm) -> Result<Perm, GroupError> {
        self.compose(other)
    }
    fn inv(&self) -> Perm {
        self.inverse()
    }
    fn unit_like(&self) -> Perm {
        Perm::identity(self.degree())
    }
}

/// An element of the cyclic group of order `order`, written additively.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CyclicElem {
    order: u32,
    exponent: u32,
}

impl CyclicElem {
    pub fn new(order: u32, exponent: i64) -> CyclicElem {
        assert!(order >= 1, "cyclic group order must be positive");
        CyclicElem {
            order,
            exponent: exponent.rem_euclid(order as i64) as u32,
        }
    }

    pub fn identity(order: u32) -> CyclicElem {
        CyclicElem::new(order, 0)
    }

    pub fn generator(order: u32) -> CyclicElem {
        CyclicElem::new(order, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Exponent as a signed integer.
    pub fn exp_i64(&self) -> i64 {
        self.exponent as i64
    }

    /// Image under the sign representation: the generator acts by `-1` when
    /// the order is even, otherwise the action is trivial.
    pub fn sign(&self) -> i64 {
        if self.order.is_multiple_of(2) && self.exponent % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

impl fmt::Debug for CyclicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g^{}∈C{}", self.exponent, self.order)
    }
}

impl GroupElem for CyclicElem {
    fn op(&self, other: &CyclicElem) -> Result<CyclicElem, GroupError> {
        if self.order != other.order {
            return Err(GroupError::BaseMismatch(format!(
                "C{} vs C{}",
                self.order, other.order
            )));
        }
        Ok(CyclicElem::new(
            self.order,
            self.exponent as i64 + other.exponent as i64,
        ))
    }
    fn inv(&self) -> CyclicElem {
        CyclicElem::new(self.order, -(self.exponent as i64))
    }
    fn unit_like(&self) -> CyclicElem {
        CyclicElem::identity(self.order)
    }
}

/// An element `(σ; h_1, .., h_n)` of `Σ_n ≀ H`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WreathElem<H> {
    pub perm: Perm,
    pub members: Vec<H>,
}

impl<H: fmt::Debug> fmt::Debug for WreathElem<H> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}; {:?})", self.perm, self.members)
    }
}

impl<H: GroupElem> WreathElem<H> {
    pub fn new(perm: Perm, members: Vec<H>) -> Result<WreathElem<H>, GroupError> {
        if perm.degree() != members.len() {
            return Err(GroupError::DegreeMismatch {
                left: perm.degree(),
                right: members.len(),
            });
        }
        Ok(WreathElem { perm, members })
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    /// The group law `(σ; h)(τ; k) = (στ; h_{τ(i)} k_i)`.
    pub fn compose(&self, other: &WreathElem<H>) -> Result<WreathElem<H>, GroupError> {
        let perm = self.perm.compose(&other.perm)?;
        let members = other
            .members
            .iter()
            .enumerate()
            .map(|(i, k)| self.members[other.perm.apply(i)].op(k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WreathElem { perm, members })
    }

    pub fn inverse(&self) -> WreathElem<H> {
        let inv = self.perm.inverse();
        let members = (0..self.degree())
            .map(|i| self.members[inv.apply(i)].inv())
            .collect();
        WreathElem { perm: inv, members }
    }

    pub fn unit_like(&self) -> WreathElem<H> {
        WreathElem {
            perm: Perm::identity(self.degree()),
            members: self.members.iter().map(GroupElem::unit_like).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Result<WreathElem<H>, GroupError> {
        let mut out = self.unit_like();
        for _ in 0..k {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    /// Left action on a tuple: act on coordinate `i` by `h_i`, then move it
    /// to slot `σ(i)`.
    pub fn act_on_slice<T: Clone>(&self, xs: &[T], act_member: impl Fn(&H, &T) -> T) -> Vec<T> {
        assert_eq!(xs.len(), self.degree(), "tuple length must equal degree");
        let acted: Vec<T> = xs
            .iter()
            .zip(&self.members)
            .map(|(x, h)| act_member(h, x))
            .collect();
        self.perm.permute_left(&acted)
    }
}

impl<H: GroupElem> GroupElem for WreathElem<H> {
    fn op(&self, other: &Self) -> Result<Self, GroupError> {
        self.compose(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn unit_like(&self) -> Self {
        WreathElem::unit_like(self)
    }
}

/// Composition with degree and base checks, as a free function.
pub fn wreath_compose<H: GroupElem>(
    a: &WreathElem<H>,
    b: &WreathElem<H>,
) -> Result<WreathElem<H>, GroupError> {
    if a.degree() != b.degree() {
        return Err(GroupError::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    a.compose(b)
}

/// `υ_{m,n} = ((1 .. n); 1, .., 1, g^{-1})` in `Z_n ≀ C_m`.
pub fn upsilon(m: u32, n: usize) -> WreathElem<CyclicElem> {
    let mut members = vec![CyclicElem::identity(m); n];
    if let Some(last) = members.last_mut() {
        *last = CyclicElem::new(m, -1);
    }
    WreathElem {
        perm: Perm::long_cycle(n),
        members,
    }
}

/// A finite group whose elements can be listed.
pub trait FiniteGroup {
    type Elem: GroupElem;

    fn identity(&self) -> Self::Elem;
    fn elements(&self) -> Vec<Self::Elem>;
    fn order(&self) -> usize;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, GroupError> {
        a.op(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicGroup {
    pub m: u32,
}

impl FiniteGroup for CyclicGroup {
    type Elem = CyclicElem;
    fn identity(&self) -> CyclicElem {
        CyclicElem::identity(self.m)
    }
    fn elements(&self) -> Vec<CyclicElem> {
        (0..self.m)
            .map(|e| CyclicElem::new(self.m, e as i64))
            .collect()
    }
    fn order(&self) -> usize {
        self.m as usize
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> CyclicElem {
        CyclicElem::new(self.m, rng.gen_range(0..self.m) as i64)
    }
}

/// `Σ_n`, or its cyclic subgroup `Z_n = ⟨(1 .. n)⟩` when `cyclic_only`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PermGroup {
    pub n: usize,
    pub cyclic_only: bool,
}

impl PermGroup {
    pub fn symmetric(n: usize) -> PermGroup {
        PermGroup {
            n,
            cyclic_only: false,
        }
    }

    pub fn cyclic(n: usize) -> PermGroup {
        PermGroup {
            n,
            cyclic_only: true,
        }
    }
}

impl FiniteGroup for PermGroup {
    type Elem = Perm;
    fn identity(&self) -> Perm {
        Perm::identity(self.n)
    }
    fn elements(&self) -> Vec<Perm> {
        if self.cyclic_only {
            let c = Perm::long_cycle(self.n);
            (0..self.n.max(1)).map(|k| c.pow(k as i64)).collect()
        } else {
            Perm::all(self.n)
        }
    }
    fn order(&self) -> usize {
        if self.cyclic_only {
            self.n.max(1)
        } else {
            (1..=self.n).product()
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        if self.cyclic_only {
            Perm::long_cycle(self.n).pow(rng.gen_range(0..self.n.max(1)) as i64)
        } else {
            Perm::random(rng, self.n)
        }
    }
}

/// `P ≀ C_m` for a permutation group `P` on `n` letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WreathGroup {
    pub top: PermGroup,
    pub base: CyclicGroup,
}

impl WreathGroup {
    /// `Z_n ≀ C_m`, of order `n·m^n`.
    pub fn cyclic(n: usize, m: u32) -> WreathGroup {
        WreathGroup {
            top: PermGroup::cyclic(n),
            base: CyclicGroup { m },
        }
    }

    /// `Σ_n ≀ C_m`.
    pub fn symmetric(n: usize, m: u32) -> WreathGroup {
        WreathGroup {
            top: PermGroup::symmetric(n),
            base: CyclicGroup { m },
        }
    }

    pub fn degree(&self) -> usize {
        self.top.n
    }
}

impl FiniteGroup for WreathGroup {
    type Elem = WreathElem<CyclicElem>;

    fn identity(&self) -> Self::Elem {
        WreathElem {
            perm: Perm::identity(self.top.n),
            members: vec![self.base.identity(); self.top.n],
        }
    }

    fn elements(&self) -> Vec<Self::Elem> {
        let m = self.base.m as usize;
        let n = self.top.n;
        let count = m.pow(n as u32);
        let mut out = Vec::with_capacity(self.order());
        for perm in self.top.elements() {
            for code in 0..count {
                let mut c = code;
                let members = (0..n)
                    .map(|_| {
                        let e = c % m;
                        c /= m;
                        CyclicElem::new(self.base.m, e as i64)
                    })
                    .collect();
                out.push(WreathElem {
                    perm: perm.clone(),
                    members,
                });
            }
        }
        out
    }

    fn order(&self) -> usize {
        self.top.order() * (self.base.m as usize).pow(self.top.n as u32)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        WreathElem {
            perm: self.top.random(rng),
            members: (0..self.top.n).map(|_| self.base.random(rng)).collect(),
        }
    }
}

/// The orbit of `point` under every element of `group`.
pub fn orbit<G, X>(
    group: &G,
    point: &X,
    act: impl Fn(&G::Elem, &X) -> Result<X, GroupError>,
) -> Result<BTreeSet<X>, GroupError>
where
    G: FiniteGroup,
    X: Ord + Clone,
{
    group.elements().iter().map(|g| act(g, point)).collect()
}

/// Lexicographically least element of the orbit of `point`. Two points lie
/// in the same orbit exactly when their canonical forms agree.
pub fn orbit_canon<G, X>(
    group: &G,
    point: &X,
    act: impl Fn(&G::Elem, &X) -> Result<X, GroupError>,
) -> Result<X, GroupError>
where
    G: FiniteGroup,
    X: Ord + Clone,
{
    let mut best: Option<X> = None;
    for g in group.elements() {
        let y = act(&g, point)?;
        if best.as_ref().is_none_or(|b| y < *b) {
            best = Some(y);
        }
    }
    Ok(best.unwrap_or_else(|| point.clone()))
}

/// Sampled group-axiom check for `Z_n ≀ C_m` (or `Σ_n ≀ C_m`). Returns a
/// description of every violation found.
pub fn check_wreath_laws<R: Rng + ?Sized>(
    group: &WreathGroup,
    rng: &mut R,
    trials: usize,
) -> Vec<String> {
    let mut failures = Vec::new();
    let e = group.identity();
    for _ in 0..trials {
        let a = group.random(rng);
        let b = group.random(rng);
        let c = group.random(rng);
        let lhs = a.compose(&b).and_then(|ab| ab.compose(&c));
        let rhs = b.compose(&c).and_then(|bc| a.compose(&bc));
        if lhs != rhs {
            failures.push(format!("associativity: a={a:?} b={b:?} c={c:?}"));
        }
        if a.compose(&e).as_ref() != Ok(&a) || e.compose(&a).as_ref() != Ok(&a) {
            failures.push(format!("unit: a={a:?}"));
        }
        if a.compose(&a.inverse()).as_ref() != Ok(&e) || a.inverse().compose(&a).as_ref() != Ok(&e)
        {
            failures.push(format!("inverse: a={a:?}"));
        }
        // The tuple action must be a left action for the chosen law.
        let xs: Vec<(usize, u32)> = (0..group.degree()).map(|i| (i, 0)).collect();
        let act = |g: &WreathElem<CyclicElem>, v: &[(usize, u32)]| {
            g.act_on_slice(v, |h, &(i, r)| (i, (r + h.exponent()) % group.base.m))
        };
        if let Ok(ab) = a.compose(&b) {
            if act(&ab, &xs) != act(&a, &act(&b, &xs)) {
                failures.push(format!("action: a={a:?} b={b:?}"));
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(m: u32, e: i64) -> CyclicElem {
        CyclicElem::new(m, e)
    }

    #[test]
    fn perm_basics() {
        let p = Perm::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(p, Perm::long_cycle(3));
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert_eq!(p.pow(3), Perm::identity(3));
        assert_eq!(p.cyclic_exponent(), Some(1));
        assert_eq!(
            Perm::from_one_line(&[2, 1, 3]).unwrap().cyclic_exponent(),
            None
        );
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(p.permute_right(&['a', 'b', 'c']), vec!['b', 'c', 'a']);
        assert_eq!(p.permute_left(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, "[2,3,1]");
    }

    #[test]
    fn unit_law() {
        let a = WreathElem::new(Perm::long_cycle(3), vec![c(3, 1), c(3, 2), c(3, 0)]).unwrap();
        assert_eq!(a.compose(&a.unit_like()).unwrap(), a);
    }

    #[test]
    fn upsilon_has_order_mn() {
        for m in 1..=6u32 {
            for n in 1..=6usize {
                let u = upsilon(m, n);
                let e = u.unit_like();
                let mut x = u.clone();
                let mut order = 1;
                while x != e {
                    x = u.compose(&x).unwrap();
                    order += 1;
                }
                assert_eq!(order, m as usize * n, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn upsilon_squared_trivial_base() {
        // Σ_2 ≀ C_1: ((12);1,1)^2 = identity, by direct multiplication.
        let u = upsilon(1, 2);
        assert_eq!(u.perm, Perm::from_one_line(&[2, 1]).unwrap());
        assert_eq!(u.compose(&u).unwrap(), u.unit_like());
    }

    #[test]
    fn compose_mismatch_errors() {
        let a = WreathElem::new(Perm::identity(2), vec![c(2, 0), c(2, 1)]).unwrap();
        let b = WreathElem::new(Perm::identity(3), vec![c(2, 0); 3]).unwrap();
        assert!(matches!(
            wreath_compose(&a, &b),
            Err(GroupError::DegreeMismatch { .. })
        ));
        let d = WreathElem::new(Perm::identity(2), vec![c(3, 0), c(3, 1)]).unwrap();
        assert!(matches!(
            wreath_compose(&a, &d),
            Err(GroupError::BaseMismatch(_))
        ));
    }

    #[test]
    fn wreath_laws_hold_on_small_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            for m in 1..=4 {
                let g = WreathGroup::cyclic(n, m);
                assert!(check_wreath_laws(&g, &mut rng, 700).is_empty());
                let s = WreathGroup::symmetric(n, m);
                assert!(check_wreath_laws(&s, &mut rng, 200).is_empty());
            }
        }
    }

    #[test]
    fn wreath_group_orders() {
        assert_eq!(WreathGroup::cyclic(4, 3).order(), 4 * 81);
        assert_eq!(WreathGroup::cyclic(4, 3).elements().len(), 324);
        assert_eq!(WreathGroup::symmetric(3, 2).elements().len(), 48);
    }

    #[test]
    fn block_cycle_examples() {
        // (1 2) on blocks (j1, j2) is (1..j)^{j2}.
        for j1 in 0..4 {
            for j2 in 0..4 {
                let p = block_cycle_perm(&[j1, j2], &Perm::long_cycle(2)).unwrap();
                assert_eq!(p, Perm::long_cycle(j1 + j2).pow(j2 as i64));
            }
        }
        assert_eq!(
            block_cycle_perm(&[2, 1, 3], &Perm::identity(3)).unwrap(),
            Perm::identity(6)
        );
        for n in 1..=4 {
            for alpha in PermGroup::cyclic(n).elements() {
                assert_eq!(block_cycle_perm(&vec![1; n], &alpha).unwrap(), alpha);
            }
        }
        let swap = Perm::from_one_line(&[2, 1, 3]).unwrap();
        assert_eq!(
            block_cycle_perm(&[1, 1, 1], &swap),
            Err(GroupError::NotCyclic)
        );
    }

    #[test]
    fn orbit_canon_examples() {
        let trivial = WreathGroup::cyclic(1, 1);
        let x = vec![(5usize, 0u32)];
        let act = |g: &WreathElem<CyclicElem>, v: &Vec<(usize, u32)>| {
            Ok(g.act_on_slice(v, |h, &(i, r)| (i, (r + h.exponent()) % h.order())))
        };
        assert_eq!(orbit_canon(&trivial, &x, act).unwrap(), x);
        // Z_2 ≀ C_1 on label pairs: (b, a) canonicalizes to (a, b).
        let z2 = WreathGroup::cyclic(2, 1);
        let labels = vec!['b', 'a'];
        let swap = |g: &WreathElem<CyclicElem>, v: &Vec<char>| Ok(g.perm.permute_left(v));
        assert_eq!(orbit_canon(&z2, &labels, swap).unwrap(), vec!['a', 'b']);
        assert_eq!(orbit(&z2, &labels, swap).unwrap().len(), 2);
    }

    #[test]
    fn orbit_canon_is_invariant_and_idempotent() {
        let g = WreathGroup::cyclic(3, 2);
        let act = |w: &WreathElem<CyclicElem>, v: &Vec<(u8, u32)>| {
            Ok(w.act_on_slice(v, |h, &(i, r)| (i, (r + h.exponent()) % 2)))
        };
        let x = vec![(2u8, 1u32), (0, 0), (1, 1)];
        let canon = orbit_canon(&g, &x, act).unwrap();
        assert_eq!(orbit_canon(&g, &canon, act).unwrap(), canon);
        for h in g.elements() {
            let y = act(&h, &x).unwrap();
            assert_eq!(orbit_canon(&g, &y, act).unwrap(), canon);
        }
    }
}
