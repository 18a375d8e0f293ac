//! Finite coefficient models: pointed monoids with a `C_m`-action, their
//! relative cyclic bar construction, the truncated free monoid monad with
//! its two-sided bar construction, labeled orbits of point configurations
//! and the comparison map onto the cyclic side.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circle::{circle_act, compose_uec, wreath_act, ArcSystem};
use crate::cyclic::{
    act_gen, circle_act_point, is_exact_lift, lambda_to_ucc, lattice_configurations,
    lattice_points, sample_point, ucc_to_lambda, CyclicPoint, Gen,
};
use crate::error::{BarError, CyclicError};
use crate::exact::Rat;
use crate::groups::{upsilon, CyclicElem, FiniteGroup, Perm, WreathElem, WreathGroup};
use crate::operads::DiskPair;
use crate::report::{expect_eq, Violation};

/// Largest tuple space enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 100_000;

/// A finite monoid with a `C_m`-action by monoid maps and an optional
/// absorbing zero serving as basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCmMonoid {
    pub elements: Vec<String>,
    pub unit: usize,
    pub mul: Vec<Vec<usize>>,
    pub sigma: Vec<usize>,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

impl FinCmMonoid {
    pub fn new(
        elements: Vec<String>,
        unit: usize,
        mul: Vec<Vec<usize>>,
        sigma: Vec<usize>,
        m: u32,
        zero: Option<usize>,
    ) -> Result<FinCmMonoid, BarError> {
        let r = FinCmMonoid {
            elements,
            unit,
            mul,
            sigma,
            m,
            zero,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FinCmMonoid, BarError> {
        let r: FinCmMonoid = serde_json::from_value(v.clone())
            .map_err(|e| BarError::InvalidMonoid(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn validate(&self) -> Result<(), BarError> {
        let bad = |s: String| Err(BarError::InvalidMonoid(s));
        let n = self.size();
        if n == 0 || self.m == 0 {
            return bad("needs at least one element and m ≥ 1".into());
        }
        if self.unit >= n || self.zero.is_some_and(|z| z >= n) {
            return bad("unit or zero out of range".into());
        }
        if self.mul.len() != n
            || self
                .mul
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&c| c >= n))
        {
            return bad("multiplication table must be n×n with entries in range".into());
        }
        if self.sigma.len() != n || self.sigma.iter().any(|&c| c >= n) {
            return bad("sigma table must have one entry per element".into());
        }
        for a in 0..n {
            if self.mul[self.unit][a] != a || self.mul[a][self.unit] != a {
                return bad(format!("unit law fails at {}", self.elements[a]));
            }
            for b in 0..n {
                if self.sigma[self.mul[a][b]] != self.mul[self.sigma[a]][self.sigma[b]] {
                    return bad(format!(
                        "sigma not multiplicative at ({}, {})",
                        self.elements[a], self.elements[b]
                    ));
                }
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        return bad(format!(
                            "not associative at ({}, {}, {})",
                            self.elements[a], self.elements[b], self.elements[c]
                        ));
                    }
                }
            }
            if (0..self.m).fold(a, |x, _| self.sigma[x]) != a {
                return bad(format!("sigma^{} moves {}", self.m, self.elements[a]));
            }
        }
        if self.sigma[self.unit] != self.unit {
            return bad("sigma must fix the unit".into());
        }
        if let Some(z) = self.zero {
            if self.sigma[z] != z || (0..n).any(|a| self.mul[a][z] != z || self.mul[z][a] != z) {
                return bad("zero must be absorbing and fixed by sigma".into());
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.unit, |acc, &x| self.mul(acc, x))
    }

    /// `σ^k(a)` for any integer `k`.
    pub fn sigma_pow(&self, a: usize, k: i64) -> usize {
        sigma_pow(&self.sigma, self.m, a, k)
    }

    pub fn is_zero(&self, a: usize) -> bool {
        self.zero == Some(a)
    }

    /// Order of `σ` as a map.
    pub fn sigma_order(&self) -> u32 {
        (1..=self.m)
            .find(|&k| (0..self.size()).all(|a| self.sigma_pow(a, k as i64) == a))
            .unwrap_or(self.m)
    }

    pub fn trivial(m: u32) -> FinCmMonoid {
        FinCmMonoid::new(names(&["1"]), 0, vec![vec![0]], vec![0], m, None).expect("valid table")
    }

    /// The group of order two with trivial action.
    pub fn c2(m: u32) -> FinCmMonoid {
        FinCmMonoid::new(
            names(&["1", "g"]),
            0,
            vec![vec![0, 1], vec![1, 0]],
            vec![0, 1],
            m,
            None,
        )
        .expect("valid table")
    }

    /// `{1, a, b}` with `xy = x` for `x, y ∈ {a, b}`; `σ` swaps `a` and `b`.
    pub fn band(m: u32) -> Result<FinCmMonoid, BarError> {
        FinCmMonoid::new(
            names(&["1", "a", "b"]),
            0,
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
            vec![0, 2, 1],
            m,
            None,
        )
    }

    /// `F_2²` under addition with `σ(x, y) = (y, x + y)`.
    pub fn f4(m: u32) -> Result<FinCmMonoid, BarError> {
        // index = x + 2y
        let add = |a: usize, b: usize| a ^ b;
        let mul = (0..4)
            .map(|a| (0..4).map(|b| add(a, b)).collect())
            .collect();
        let sigma = (0..4)
            .map(|a| {
                let (x, y) = (a & 1, a >> 1);
                y | ((x ^ y) << 1)
            })
            .collect();
        FinCmMonoid::new(names(&["0", "x", "y", "x+y"]), 0, mul, sigma, m, None)
    }

    /// `ℤ/5` under addition with `σ(x) = 2x`.
    pub fn z5(m: u32) -> Result<FinCmMonoid, BarError> {
        let mul = (0..5)
            .map(|a| (0..5).map(|b| (a + b) % 5).collect())
            .collect();
        let sigma = (0..5).map(|a| (2 * a) % 5).collect();
        FinCmMonoid::new(names(&["0", "1", "2", "3", "4"]), 0, mul, sigma, m, None)
    }

    /// `{1, x, 0}` with `x² = 0`, pointed by `0`.
    pub fn nil(m: u32) -> FinCmMonoid {
        FinCmMonoid::new(
            names(&["1", "x", "0"]),
            0,
            vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
            vec![0, 1, 2],
            m,
            Some(2),
        )
        .expect("valid table")
    }

    /// Built-in monoids valid for `m`, by name.
    pub fn builtins(m: u32) -> Vec<(&'static str, FinCmMonoid)> {
        let mut out = vec![
            ("trivial", FinCmMonoid::trivial(m)),
            ("c2", FinCmMonoid::c2(m)),
            ("nil", FinCmMonoid::nil(m)),
        ];
        for (name, r) in [
            ("band", FinCmMonoid::band(m)),
            ("f4", FinCmMonoid::f4(m)),
            ("z5", FinCmMonoid::z5(m)),
        ] {
            if let Ok(r) = r {
                out.push((name, r));
            }
        }
        out
    }

    pub fn builtin(name: &str, m: u32) -> Result<FinCmMonoid, BarError> {
        FinCmMonoid::builtins(m)
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, r)| r)
            .ok_or_else(|| {
                BarError::InvalidMonoid(format!("no built-in monoid {name:?} for m = {m}"))
            })
    }
}

fn sigma_pow(sigma: &[usize], m: u32, a: usize, k: i64) -> usize {
    let k = k.rem_euclid(m as i64);
    (0..k).fold(a, |x, _| sigma[x])
}

/// A finite pointed set with a `C_m`-action; element `0` is the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedCmSet {
    pub sigma: Vec<usize>,
    pub m: u32,
}

impl PointedCmSet {
    pub fn new(sigma: Vec<usize>, m: u32) -> Result<PointedCmSet, BarError> {
        let x = PointedCmSet { sigma, m };
        let n = x.sigma.len();
        if n == 0 || m == 0 || x.sigma[0] != 0 || x.sigma.iter().any(|&s| s >= n) {
            return Err(BarError::InvalidPointedSet(
                "sigma must fix the basepoint 0 and stay in range".into(),
            ));
        }
        if (0..n).any(|a| (0..m).fold(a, |y, _| x.sigma[y]) != a) {
            return Err(BarError::InvalidPointedSet(format!(
                "sigma^{m} is not the identity"
            )));
        }
        let mut seen = vec![false; n];
        for &s in &x.sigma {
            if std::mem::replace(&mut seen[s], true) {
                return Err(BarError::InvalidPointedSet(
                    "sigma is not a bijection".into(),
                ));
            }
        }
        Ok(x)
    }

    /// `k` letters plus the basepoint, all fixed.
    pub fn fixed(k: usize, m: u32) -> PointedCmSet {
        PointedCmSet::new((0..=k).collect(), m).expect("identity action")
    }

    /// `k` letters cycled by `σ`; needs `k | m`.
    pub fn cycled(k: usize, m: u32) -> Result<PointedCmSet, BarError> {
        let mut sigma = vec![0];
        sigma.extend((1..=k).map(|a| a % k + 1));
        PointedCmSet::new(sigma, m)
    }

    /// Number of letters other than the basepoint.
    pub fn letters(&self) -> usize {
        self.sigma.len() - 1
    }
}

/// Labels carrying a `C_m`-action and possibly a basepoint.
pub trait CmLabels {
    fn m(&self) -> u32;
    fn sigma_pow(&self, a: usize, k: i64) -> usize;
    fn is_base(&self, a: usize) -> bool;
    fn label_count(&self) -> usize;
}

impl CmLabels for FinCmMonoid {
    fn m(&self) -> u32 {
        self.m
    }
    fn sigma_pow(&self, a: usize, k: i64) -> usize {
        FinCmMonoid::sigma_pow(self, a, k)
    }
    fn is_base(&self, a: usize) -> bool {
        self.is_zero(a)
    }
    fn label_count(&self) -> usize {
        self.size()
    }
}

impl CmLabels for PointedCmSet {
    fn m(&self) -> u32 {
        self.m
    }
    fn sigma_pow(&self, a: usize, k: i64) -> usize {
        sigma_pow(&self.sigma, self.m, a, k)
    }
    fn is_base(&self, a: usize) -> bool {
        a == 0
    }
    fn label_count(&self) -> usize {
        self.sigma.len()
    }
}

/// The relative cyclic bar construction `N^cyc R` with `N_q = R^{q+1}`.
/// `twist_sigma = false` drops `σ` from the twist.
#[derive(Clone, Copy, Debug)]
pub struct CyclicBar<'a> {
    pub monoid: &'a FinCmMonoid,
    pub twist_sigma: bool,
}

impl<'a> CyclicBar<'a> {
    pub fn new(monoid: &'a FinCmMonoid) -> CyclicBar<'a> {
        CyclicBar {
            monoid,
            twist_sigma: true,
        }
    }

    /// Collapse tuples with a zero entry to the basepoint tuple.
    pub fn smash(&self, a: Vec<usize>) -> Vec<usize> {
        match self.monoid.zero {
            Some(z) if a.contains(&z) => vec![z; a.len()],
            _ => a,
        }
    }

    /// `τ_q(a_0, .., a_q) = (σa_q, a_0, .., a_{q-1})`.
    pub fn twist(&self, a: &[usize]) -> Vec<usize> {
        let q = a.len() - 1;
        let last = if self.twist_sigma {
            self.monoid.sigma[a[q]]
        } else {
            a[q]
        };
        let mut out = Vec::with_capacity(a.len());
        out.push(last);
        out.extend_from_slice(&a[..q]);
        self.smash(out)
    }

    /// `d_i` multiplies entries `i` and `i+1`; `d_q = d_0 τ_q`.
    pub fn face(&self, i: usize, a: &[usize]) -> Result<Vec<usize>, BarError> {
        let q = a.len() - 1;
        if q == 0 || i > q {
            return Err(BarError::IndexOutOfRange {
                index: i,
                degree: q,
            });
        }
        if i == q {
            return self.face(0, &self.twist(a));
        }
        let mut out = a[..i].to_vec();
        out.push(self.monoid.mul(a[i], a[i + 1]));
        out.extend_from_slice(&a[i + 2..]);
        Ok(self.smash(out))
    }

    /// `s_i` inserts the unit after entry `i`.
    pub fn degeneracy(&self, i: usize, a: &[usize]) -> Result<Vec<usize>, BarError> {
        let q = a.len() - 1;
        if i > q {
            return Err(BarError::IndexOutOfRange {
                index: i,
                degree: q,
            });
        }
        let mut out = a[..=i].to_vec();
        out.push(self.monoid.unit);
        out.extend_from_slice(&a[i + 1..]);
        Ok(self.smash(out))
    }

    /// Tuples of degree `q` in smashed form, all of them when few enough.
    pub fn tuples<R: Rng + ?Sized>(
        &self,
        q: usize,
        samples: usize,
        rng: &mut R,
    ) -> Vec<Vec<usize>> {
        let (all, _) = degree_tuples(self.monoid.size(), q, EXHAUSTIVE_LIMIT, samples, rng);
        all.into_iter()
            .filter(|a| self.smash(a.clone()) == *a)
            .collect()
    }

    pub fn twist_pow(&self, a: &[usize], k: usize) -> Vec<usize> {
        (0..k).fold(a.to_vec(), |x, _| self.twist(&x))
    }

    /// Apply a word of generators, rightmost first.
    pub fn act(&self, gens: &[Gen], a: &[usize]) -> Result<Vec<usize>, BarError> {
        gens.iter().rev().try_fold(a.to_vec(), |x, g| match *g {
            Gen::Face(i) => self.face(i, &x),
            Gen::Degen(i) => self.degeneracy(i, &x),
            Gen::Twist => Ok(self.twist(&x)),
        })
    }
}

/// All tuples of degree `q` when there are at most `limit` of them, else
/// `samples` random ones.
pub fn degree_tuples<R: Rng + ?Sized>(
    size: usize,
    q: usize,
    limit: usize,
    samples: usize,
    rng: &mut R,
) -> (Vec<Vec<usize>>, bool) {
    let len = q + 1;
    let total = size.checked_pow(len as u32).filter(|&t| t <= limit);
    match total {
        Some(total) => {
            let out = (0..total)
                .map(|mut code| {
                    (0..len)
                        .map(|_| {
                            let d = code % size;
                            code /= size;
                            d
                        })
                        .collect()
                })
                .collect();
            (out, true)
        }
        None => (
            (0..samples)
                .map(|_| (0..len).map(|_| rng.gen_range(0..size)).collect())
                .collect(),
            false,
        ),
    }
}

/// Every relation of the m-cyclic category and every simplicial identity on
/// `N^cyc R` up to degree `q_max`.
pub fn verify_cyclic_object<R: Rng + ?Sized>(
    bar: &CyclicBar<'_>,
    q_max: usize,
    samples: usize,
    rng: &mut R,
) -> (usize, Vec<Violation>) {
    use Gen::{Degen as S, Face as D, Twist as T};
    let m = bar.monoid.m as usize;
    let mut out = Vec::new();
    let mut cases = 0;
    for q in 0..=q_max {
        let tuples = bar.tuples(q, samples, rng);
        // (law, lhs word, rhs word), words act on degree q
        let mut laws: Vec<(String, Vec<Gen>, Vec<Gen>)> = vec![(
            format!("t{q}^{}=id", m * (q + 1)),
            vec![T; m * (q + 1)],
            vec![],
        )];
        if q >= 1 {
            laws.push((format!("d0.t{q}=d{q}"), vec![D(0), T], vec![D(q)]));
            for i in 1..=q {
                laws.push((
                    format!("d{i}.t{q}=t.d{}", i - 1),
                    vec![D(i), T],
                    vec![T, D(i - 1)],
                ));
            }
        }
        laws.push((format!("s0.t{q}=t^2.s{q}"), vec![S(0), T], vec![T, T, S(q)]));
        for i in 1..=q {
            laws.push((
                format!("s{i}.t{q}=t.s{}", i - 1),
                vec![S(i), T],
                vec![T, S(i - 1)],
            ));
        }
        for j in 0..=q {
            for i in 0..j {
                if q >= 2 {
                    laws.push((
                        format!("d{i}.d{j}=d{}.d{i}", j - 1),
                        vec![D(i), D(j)],
                        vec![D(j - 1), D(i)],
                    ));
                }
            }
            for i in 0..=j {
                laws.push((
                    format!("s{i}.s{j}=s{}.s{i}", j + 1),
                    vec![S(i), S(j)],
                    vec![S(j + 1), S(i)],
                ));
            }
            for i in 0..=q + 1 {
                let rhs = if i < j {
                    vec![S(j - 1), D(i)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    vec![S(j), D(i - 1)]
                };
                if rhs.iter().any(|g| matches!(g, D(_))) && q == 0 {
                    continue;
                }
                laws.push((format!("d{i}.s{j}"), vec![D(i), S(j)], rhs));
            }
        }
        for a in &tuples {
            for (law, lhs, rhs) in &laws {
                cases += 1;
                expect_eq(
                    &mut out,
                    law.as_str(),
                    || format!("q={q} a={a:?}"),
                    bar.act(lhs, a),
                    bar.act(rhs, a),
                );
            }
        }
    }
    out.sort();
    (cases, out)
}

/// The order of `τ_q` as a permutation of (enumerated or sampled) tuples.
pub fn twist_order<R: Rng + ?Sized>(
    bar: &CyclicBar<'_>,
    q: usize,
    samples: usize,
    rng: &mut R,
) -> usize {
    let tuples = bar.tuples(q, samples, rng);
    let mut order = 1usize;
    for a in tuples {
        let mut k = 1;
        let mut x = bar.twist(&a);
        while x != a {
            x = bar.twist(&x);
            k += 1;
        }
        order = num_integer::lcm(order, k);
    }
    order
}

/// An element of `𝕋^k S` for a pointed set `S`: nested words of non-base
/// letters, the basepoint, or the truncation sentinel.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TElem {
    Base,
    Overflow,
    Leaf(usize),
    Word(Vec<TElem>),
}

impl TElem {
    pub fn is_overflow(&self) -> bool {
        match self {
            TElem::Overflow => true,
            TElem::Word(ws) => ws.iter().any(TElem::is_overflow),
            _ => false,
        }
    }

    /// Length of the outermost word.
    pub fn len(&self) -> usize {
        match self {
            TElem::Word(ws) => ws.len(),
            _ => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The free monoid monad truncated at words of length `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeMonad {
    pub bound: usize,
}

impl FreeMonad {
    /// A word, collapsing to the basepoint or the sentinel as needed.
    pub fn word(&self, items: Vec<TElem>) -> TElem {
        if items.len() > self.bound || items.contains(&TElem::Overflow) {
            TElem::Overflow
        } else if items.contains(&TElem::Base) {
            TElem::Base
        } else {
            TElem::Word(items)
        }
    }

    pub fn unit(&self, x: TElem) -> TElem {
        match x {
            TElem::Base | TElem::Overflow => x,
            x => self.word(vec![x]),
        }
    }

    /// Flatten a word of words.
    pub fn mult(&self, x: &TElem) -> TElem {
        match x {
            TElem::Word(ws) => {
                let mut flat = Vec::new();
                for w in ws {
                    match w {
                        TElem::Word(inner) => flat.extend(inner.iter().cloned()),
                        other => return other.clone(),
                    }
                }
                self.word(flat)
            }
            other => other.clone(),
        }
    }

    pub fn concat(&self, a: &TElem, b: &TElem) -> TElem {
        self.mult(&TElem::Word(vec![a.clone(), b.clone()]))
    }

    /// Apply `f` to every element at nesting depth `depth`, depth 0 being
    /// `x` itself.
    pub fn map_at(&self, x: &TElem, depth: usize, f: &dyn Fn(&TElem) -> TElem) -> TElem {
        if depth == 0 {
            return f(x);
        }
        match x {
            TElem::Word(ws) => self.word(ws.iter().map(|w| self.map_at(w, depth - 1, f)).collect()),
            other => other.clone(),
        }
    }

    /// Letterwise action of `σ^k` on `𝕋^depth X`.
    pub fn act_letters<L: CmLabels>(&self, x: &TElem, labels: &L, k: i64) -> TElem {
        match x {
            TElem::Leaf(a) => leaf(labels, labels.sigma_pow(*a, k)),
            TElem::Word(ws) => {
                self.word(ws.iter().map(|w| self.act_letters(w, labels, k)).collect())
            }
            other => other.clone(),
        }
    }

    /// The monoid action `𝕋R → R`.
    pub fn evaluate(&self, r: &FinCmMonoid, x: &TElem) -> TElem {
        match x {
            TElem::Word(ws) => {
                let mut acc = r.unit;
                for w in ws {
                    match w {
                        TElem::Leaf(a) => acc = r.mul(acc, *a),
                        other => return other.clone(),
                    }
                }
                leaf(r, acc)
            }
            other => other.clone(),
        }
    }

    /// Every word of depth one over the letters of `x`, up to the bound.
    pub fn all_words(&self, x: &PointedCmSet) -> Vec<TElem> {
        let mut out = vec![TElem::Word(vec![])];
        let mut layer = vec![vec![]];
        for _ in 0..self.bound {
            let mut next = Vec::new();
            for w in &layer {
                for a in 1..=x.letters() {
                    let mut v: Vec<TElem> = w.clone();
                    v.push(TElem::Leaf(a));
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(TElem::Word));
            layer = next;
        }
        out
    }
}

/// A letter, or the basepoint.
pub fn leaf<L: CmLabels>(labels: &L, a: usize) -> TElem {
    if labels.is_base(a) {
        TElem::Base
    } else {
        TElem::Leaf(a)
    }
}

/// A random element of `𝕋^depth S` with words of length at most `len`.
pub fn sample_telem<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    len: usize,
    letters: usize,
    offset: usize,
) -> TElem {
    if depth == 0 {
        return TElem::Leaf(offset + rng.gen_range(0..letters));
    }
    let k = rng.gen_range(0..=len);
    TElem::Word(
        (0..k)
            .map(|_| sample_telem(rng, depth - 1, len, letters, offset))
            .collect(),
    )
}

/// Monad laws for truncated `𝕋` on `x`, the letterwise action commuting with
/// concatenation, and the action laws of a monoid `r`. Results where either
/// side overflows are counted separately and not compared.
pub fn check_monad_laws<R: Rng + ?Sized>(
    t: &FreeMonad,
    x: &PointedCmSet,
    r: &FinCmMonoid,
    rng: &mut R,
    trials: usize,
) -> (usize, usize, Vec<Violation>) {
    let mut out = Vec::new();
    let (mut cases, mut overflow) = (0, 0);
    let mut compare = |out: &mut Vec<Violation>, law: &str, w: &TElem, lhs: TElem, rhs: TElem| {
        if lhs.is_overflow() || rhs.is_overflow() {
            overflow += 1;
            return;
        }
        cases += 1;
        if lhs != rhs {
            out.push(Violation::new(law, format!("{w:?}"), lhs, rhs));
        }
    };
    let letters = x.letters().max(1);
    for _ in 0..trials {
        let w = if x.letters() == 0 {
            TElem::Word(vec![])
        } else {
            sample_telem(rng, 1, t.bound, letters, 1)
        };
        compare(
            &mut out,
            "left unit",
            &w,
            t.mult(&t.unit(w.clone())),
            w.clone(),
        );
        let inner = t.map_at(&w, 1, &|e| t.unit(e.clone()));
        compare(&mut out, "right unit", &w, t.mult(&inner), w.clone());
        let w3 = if x.letters() == 0 {
            TElem::Word(vec![])
        } else {
            sample_telem(rng, 3, 3, letters, 1)
        };
        let outer_first = t.mult(&t.mult(&w3));
        let inner_first = t.mult(&t.map_at(&w3, 1, &|e| t.mult(e)));
        compare(&mut out, "associativity", &w3, outer_first, inner_first);

        let rw = sample_telem(rng, 1, t.bound, r.size(), 0);
        let rw = t.map_at(&rw, 1, &|e| match e {
            TElem::Leaf(a) => leaf(r, *a),
            other => other.clone(),
        });
        if let Some(TElem::Leaf(a)) = match &rw {
            TElem::Word(ws) => ws.first().cloned(),
            _ => None,
        } {
            let e = leaf(r, a);
            compare(
                &mut out,
                "action unit",
                &e,
                t.evaluate(r, &t.unit(e.clone())),
                e.clone(),
            );
        }
        let rw2 = sample_telem(rng, 2, 3, r.size(), 0);
        let rw2 = t.map_at(&rw2, 2, &|e| match e {
            TElem::Leaf(a) => leaf(r, *a),
            other => other.clone(),
        });
        let lhs = t.evaluate(r, &t.mult(&rw2));
        let rhs = t.evaluate(r, &t.map_at(&rw2, 1, &|e| t.evaluate(r, e)));
        compare(&mut out, "action associativity", &rw2, lhs, rhs);
    }
    let words = t.all_words(x);
    for k in 0..x.m as i64 {
        for a in &words {
            for b in &words {
                let lhs = t.concat(&t.act_letters(a, x, k), &t.act_letters(b, x, k));
                let rhs = t.act_letters(&t.concat(a, b), x, k);
                cases += 1;
                if lhs != rhs {
                    out.push(Violation::new(
                        "action commutes with concatenation",
                        format!("{a:?} {b:?} k={k}"),
                        lhs,
                        rhs,
                    ));
                }
            }
        }
    }
    out.sort();
    (cases, overflow, out)
}

/// The two-sided bar construction `B(𝕋, 𝕋, R)` with `B_q = 𝕋^{q+1} R`.
#[derive(Clone, Copy, Debug)]
pub struct MonadicBar<'a> {
    pub monad: FreeMonad,
    pub monoid: &'a FinCmMonoid,
}

impl MonadicBar<'_> {
    /// `d_0` acts on `R`, `d_i` for `1 ≤ i ≤ q` multiplies adjacent copies of `𝕋`.
    pub fn face(&self, q: usize, i: usize, x: &TElem) -> Result<TElem, BarError> {
        if i > q {
            return Err(BarError::IndexOutOfRange {
                index: i,
                degree: q,
            });
        }
        if q == 0 {
            return Err(BarError::IndexOutOfRange {
                index: i,
                degree: q,
            });
        }
        let t = self.monad;
        Ok(if i == 0 {
            t.map_at(x, q, &|e| t.evaluate(self.monoid, e))
        } else {
            t.map_at(x, q - i, &|e| t.mult(e))
        })
    }

    /// `s_i` inserts a unit of `𝕋`.
    pub fn degeneracy(&self, q: usize, i: usize, x: &TElem) -> Result<TElem, BarError> {
        if i > q {
            return Err(BarError::IndexOutOfRange {
                index: i,
                degree: q,
            });
        }
        let t = self.monad;
        Ok(t.map_at(x, q + 1 - i, &|e| t.unit(e.clone())))
    }

    /// The augmentation to `R`: evaluate every level.
    pub fn augment(&self, q: usize, x: &TElem) -> TElem {
        let mut cur = x.clone();
        for k in (0..=q).rev() {
            cur = self
                .monad
                .map_at(&cur, k, &|e| self.monad.evaluate(self.monoid, e));
        }
        cur
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, q: usize, len: usize) -> TElem {
        let x = sample_telem(rng, q + 1, len, self.monoid.size(), 0);
        self.monad.map_at(&x, q + 1, &|e| match e {
            TElem::Leaf(a) => leaf(self.monoid, *a),
            other => other.clone(),
        })
    }
}

/// Simplicial identities on sampled simplices of `B(𝕋, 𝕋, R)` up to degree
/// `q_max`, and compatibility of the augmentation with every face.
pub fn check_bar_identities<R: Rng + ?Sized>(
    bar: &MonadicBar<'_>,
    q_max: usize,
    trials: usize,
    rng: &mut R,
) -> (usize, usize, Vec<Violation>) {
    let mut out = Vec::new();
    let (mut cases, mut overflow) = (0, 0);
    let mut compare = |law: String,
                       w: &TElem,
                       lhs: Result<TElem, BarError>,
                       rhs: Result<TElem, BarError>| match (lhs, rhs) {
        (Ok(l), Ok(r)) if l.is_overflow() || r.is_overflow() => overflow += 1,
        (l, r) => {
            cases += 1;
            let (l, r) = (format!("{l:?}"), format!("{r:?}"));
            if l != r {
                out.push(Violation {
                    law,
                    witness: format!("{w:?}"),
                    expected: l,
                    got: r,
                });
            }
        }
    };
    for q in 0..=q_max {
        for _ in 0..trials {
            let x = bar.sample(rng, q, 2);
            let aug = bar.augment(q, &x);
            for i in 0..=q {
                if q >= 1 {
                    let fx = bar.face(q, i, &x);
                    let got = fx
                        .as_ref()
                        .map(|y| bar.augment(q - 1, y))
                        .map_err(|e| BarError::InvalidMonoid(e.to_string()));
                    compare(format!("augmentation after d{i}"), &x, Ok(aug.clone()), got);
                }
                for j in i + 1..=q {
                    if q >= 2 {
                        let lhs = bar.face(q, j, &x).and_then(|y| bar.face(q - 1, i, &y));
                        let rhs = bar.face(q, i, &x).and_then(|y| bar.face(q - 1, j - 1, &y));
                        compare(format!("d{i}.d{j}=d{}.d{i}", j - 1), &x, lhs, rhs);
                    }
                }
                for j in i..=q {
                    let lhs = bar
                        .degeneracy(q, j, &x)
                        .and_then(|y| bar.degeneracy(q + 1, i, &y));
                    let rhs = bar
                        .degeneracy(q, i, &x)
                        .and_then(|y| bar.degeneracy(q + 1, j + 1, &y));
                    compare(format!("s{i}.s{j}=s{}.s{i}", j + 1), &x, lhs, rhs);
                }
            }
            for j in 0..=q {
                let sx = bar.degeneracy(q, j, &x);
                let aug_s = sx
                    .as_ref()
                    .map(|y| bar.augment(q + 1, y))
                    .map_err(|e| BarError::InvalidMonoid(e.to_string()));
                compare(
                    format!("augmentation after s{j}"),
                    &x,
                    Ok(aug.clone()),
                    aug_s,
                );
                for i in 0..=q + 1 {
                    let lhs = sx.clone().and_then(|y| bar.face(q + 1, i, &y));
                    let rhs = if i < j {
                        bar.face(q, i, &x)
                            .and_then(|y| bar.degeneracy(q - 1, j - 1, &y))
                    } else if i == j || i == j + 1 {
                        Ok(x.clone())
                    } else {
                        bar.face(q, i - 1, &x)
                            .and_then(|y| bar.degeneracy(q - 1, j, &y))
                    };
                    compare(format!("d{i}.s{j}"), &x, lhs, rhs);
                }
            }
        }
    }
    out.sort();
    (cases, overflow, out)
}

/// A class of `uC^c(n)_+ ∧_{Z_n ≀ C_m} X^{(n)}`, stored through its least
/// representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LabeledOrbit {
    Base,
    Unit,
    Orbit {
        space: ArcSystem,
        labels: Vec<usize>,
    },
}

/// A class of `Λ_m[n-1]_+ ∧_{C_{mn}} X^{(n)}`, stored through its least
/// representative under the diagonal twist.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CyclicClass {
    Base,
    Unit,
    Class {
        point: CyclicPoint,
        labels: Vec<usize>,
    },
}

/// `(g·a)_{σ(i)} = σ^{-h_i}(a_i)`.
pub fn label_act<L: CmLabels>(g: &WreathElem<CyclicElem>, labels: &[usize], l: &L) -> Vec<usize> {
    g.act_on_slice(labels, |h, a| l.sigma_pow(*a, -h.exp_i64()))
}

/// Diagonal action on a configuration with labels.
pub fn labeled_act<L: CmLabels>(
    g: &WreathElem<CyclicElem>,
    x: &ArcSystem,
    labels: &[usize],
    l: &L,
) -> Result<(ArcSystem, Vec<usize>), BarError> {
    Ok((wreath_act(g, x)?, label_act(g, labels, l)))
}

fn check_labels<L: CmLabels>(labels: &[usize], l: &L) -> Result<(), BarError> {
    match labels.iter().find(|&&a| a >= l.label_count()) {
        Some(&a) => Err(BarError::BadLabel(a)),
        None => Ok(()),
    }
}

/// The class of a labeled configuration.
pub fn orbit_of<L: CmLabels>(
    x: &ArcSystem,
    labels: &[usize],
    l: &L,
) -> Result<LabeledOrbit, BarError> {
    check_labels(labels, l)?;
    if x.arity() != labels.len() {
        return Err(BarError::DegreeMismatch {
            expected: x.arity(),
            got: labels.len(),
        });
    }
    if labels.is_empty() {
        return Ok(LabeledOrbit::Unit);
    }
    if labels.iter().any(|&a| l.is_base(a)) {
        return Ok(LabeledOrbit::Base);
    }
    let group = WreathGroup::cyclic(x.arity(), l.m());
    let mut best: Option<(ArcSystem, Vec<usize>)> = None;
    for g in group.elements() {
        let y = labeled_act(&g, x, labels, l)?;
        if best.as_ref().is_none_or(|b| y < *b) {
            best = Some(y);
        }
    }
    let (space, labels) = best.expect("groups are nonempty");
    Ok(LabeledOrbit::Orbit { space, labels })
}

/// The diagonal twist on a point with labels.
pub fn twist_pair<L: CmLabels>(
    p: &CyclicPoint,
    labels: &[usize],
    l: &L,
) -> Result<(CyclicPoint, Vec<usize>), BarError> {
    let q = labels.len() - 1;
    let mut a = Vec::with_capacity(q + 1);
    a.push(l.sigma_pow(labels[q], 1));
    a.extend_from_slice(&labels[..q]);
    Ok((act_gen(Gen::Twist, p)?, a))
}

/// The class of a point of `Λ_m[q]` with labels.
pub fn cyclic_class_of<L: CmLabels>(
    p: &CyclicPoint,
    labels: &[usize],
    l: &L,
) -> Result<CyclicClass, BarError> {
    check_labels(labels, l)?;
    if p.degree() + 1 != labels.len() {
        return Err(BarError::DegreeMismatch {
            expected: p.degree() + 1,
            got: labels.len(),
        });
    }
    if labels.iter().any(|&a| l.is_base(a)) {
        return Ok(CyclicClass::Base);
    }
    let mut cur = (p.clone(), labels.to_vec());
    let mut best = cur.clone();
    for _ in 1..l.m() as usize * labels.len() {
        cur = twist_pair(&cur.0, &cur.1, l)?;
        if cur < best {
            best = cur.clone();
        }
    }
    Ok(CyclicClass::Class {
        point: best.0,
        labels: best.1,
    })
}

/// The element `(id; h)` moving each point of `x` onto the exact lift that
/// starts at its first point.
pub fn lift_element(x: &ArcSystem) -> Result<WreathElem<CyclicElem>, BarError> {
    let n = x.arity();
    let m = x.m as i64;
    let mut members = Vec::with_capacity(n);
    let mut target = x.pairs[0].zeta.clone();
    for j in 0..n {
        let diff = (&target - &x.pairs[j].zeta)
            .rem_euclid(&Rat::one())
            .mul_int(m);
        if !diff.is_integer() {
            return Err(CyclicError::InvalidPoint(format!(
                "point {} is not on the orbit of its predecessor",
                j + 1
            ))
            .into());
        }
        members.push(CyclicElem::new(
            x.m,
            num_traits::ToPrimitive::to_i64(&diff.floor()).expect("exponent below m"),
        ));
        target = &target + &x.phi[j];
    }
    Ok(WreathElem::new(Perm::identity(n), members)?)
}

/// The comparison map on a labeled configuration: move to the exact lift,
/// read off the point of `Λ_m[n-1]` and take its class.
pub fn map_pair_c_to_l<L: CmLabels>(
    x: &ArcSystem,
    labels: &[usize],
    l: &L,
) -> Result<CyclicClass, BarError> {
    check_labels(labels, l)?;
    if labels.is_empty() {
        return Ok(CyclicClass::Unit);
    }
    if labels.iter().any(|&a| l.is_base(a)) {
        return Ok(CyclicClass::Base);
    }
    let g = lift_element(x)?;
    let (y, b) = labeled_act(&g, x, labels, l)?;
    debug_assert!(is_exact_lift(&y));
    let p = ucc_to_lambda(&y)?;
    cyclic_class_of(&p, &b, l)
}

pub fn map_c_to_l<L: CmLabels>(o: &LabeledOrbit, l: &L) -> Result<CyclicClass, BarError> {
    match o {
        LabeledOrbit::Base => Ok(CyclicClass::Base),
        LabeledOrbit::Unit => Ok(CyclicClass::Unit),
        LabeledOrbit::Orbit { space, labels } => map_pair_c_to_l(space, labels, l),
    }
}

/// The inverse comparison `(p, a) ↦ [λ(p), a]`.
pub fn map_l_to_c<L: CmLabels>(c: &CyclicClass, l: &L) -> Result<LabeledOrbit, BarError> {
    match c {
        CyclicClass::Base => Ok(LabeledOrbit::Base),
        CyclicClass::Unit => Ok(LabeledOrbit::Unit),
        CyclicClass::Class { point, labels } => orbit_of(&lambda_to_ucc(point)?, labels, l),
    }
}

/// A random configuration of `n` points with gaps in `(1/(m·den))ℤ`.
pub fn sample_ucc<R: Rng + ?Sized>(rng: &mut R, m: u32, n: usize, den: i64) -> ArcSystem {
    if n == 0 {
        return ArcSystem::empty(m);
    }
    let p = sample_point(rng, m, n - 1, den);
    let g = WreathGroup::cyclic(n, m).random(rng);
    let x = lambda_to_ucc(&p).expect("sampled point");
    wreath_act(&g, &x).expect("cyclic permutation")
}

/// Sampled labeled classes of `uC^c(n)_+ ∧ R^{(n)}` for `n ≤ n_max`.
pub fn compressed_ccr<R: Rng + ?Sized>(
    monoid: &FinCmMonoid,
    n_max: usize,
    den: i64,
    samples: usize,
    rng: &mut R,
) -> Result<BTreeSet<LabeledOrbit>, BarError> {
    let mut out = BTreeSet::new();
    for _ in 0..samples {
        let n = rng.gen_range(0..=n_max);
        let x = sample_ucc(rng, monoid.m, n, den);
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..monoid.size())).collect();
        out.insert(orbit_of(&x, &labels, monoid)?);
    }
    Ok(out)
}

/// Representative independence, round trip, rotation equivariance and the
/// basepoint collapse of the comparison map on sampled labeled classes.
pub fn check_comparison_laws<L: CmLabels, R: Rng + ?Sized>(
    l: &L,
    n_max: usize,
    den: i64,
    trials: usize,
    rng: &mut R,
) -> (usize, Vec<Violation>) {
    let m = l.m();
    let mut out = Vec::new();
    let mut cases = 0;
    for _ in 0..trials {
        let n = rng.gen_range(1..=n_max);
        let x = sample_ucc(rng, m, n, den);
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..l.label_count())).collect();
        let w = || format!("x={x:?} labels={labels:?}");
        let image = map_pair_c_to_l(&x, &labels, l);
        for g in WreathGroup::cyclic(n, m).elements() {
            cases += 1;
            let moved =
                labeled_act(&g, &x, &labels, l).and_then(|(y, b)| map_pair_c_to_l(&y, &b, l));
            if moved.as_ref().ok() != image.as_ref().ok() {
                out.push(Violation::new(
                    "representative independence",
                    format!("{} g={g:?}", w()),
                    &image,
                    moved,
                ));
            }
        }
        let orbit = orbit_of(&x, &labels, l);
        let back = orbit
            .clone()
            .and_then(|o| map_c_to_l(&o, l))
            .and_then(|c| map_l_to_c(&c, l));
        cases += 1;
        expect_eq(&mut out, "inverse after comparison", w, orbit.clone(), back);

        let theta = Rat::new(rng.gen_range(0..4 * den), 4 * den);
        let rotated = map_pair_c_to_l(&circle_act(&theta, &x), &labels, l);
        let expected = image.clone().and_then(|c| match c {
            CyclicClass::Class { point, labels } => {
                cyclic_class_of(&circle_act_point(&theta, &point), &labels, l)
            }
            other => Ok(other),
        });
        cases += 1;
        expect_eq(
            &mut out,
            "rotation equivariance",
            || format!("{} theta={theta}", w()),
            expected,
            rotated,
        );

        let collapsed = labels.iter().any(|&a| l.is_base(a));
        cases += 1;
        if collapsed != (orbit.as_ref().ok() == Some(&LabeledOrbit::Base)) {
            out.push(Violation::new("basepoint collapse", w(), collapsed, &orbit));
        }
    }
    // the two-point translate example
    if n_max >= 2 {
        let x = sample_ucc(rng, m, 2, den);
        let labels: Vec<usize> = (0..2).map(|_| rng.gen_range(0..l.label_count())).collect();
        let u = upsilon(m, 2);
        let translated = vec![l.sigma_pow(labels[1], 1), labels[0]];
        let lhs = orbit_of(&x, &labels, l);
        let rhs = wreath_act(&u, &x)
            .map_err(BarError::from)
            .and_then(|y| orbit_of(&y, &translated, l));
        cases += 1;
        expect_eq(
            &mut out,
            "twist translate",
            || format!("x={x:?} labels={labels:?}"),
            lhs,
            rhs,
        );
    }
    out.sort();
    (cases, out)
}

/// Class counts in one homogeneous degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub n: usize,
    pub left_classes: usize,
    pub right_classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycbarReport {
    pub m: u32,
    pub letters: usize,
    pub den: i64,
    pub degrees: Vec<DegreeCount>,
    pub violations: Vec<Violation>,
}

fn label_tuples(letters: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (1..=letters).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Degreewise comparison for the free monoid on `x`: enumerate the lattice
/// classes on both sides, check the comparison map is constant on each
/// class, injective and onto, and that the inverse map undoes it.
pub fn check_thm_cycbar_free(
    x: &PointedCmSet,
    n_max: usize,
    den: i64,
) -> Result<CycbarReport, BarError> {
    let m = x.m;
    let mut degrees = Vec::new();
    let mut violations = Vec::new();
    // degree 0: the unit on both sides
    let unit_ok = map_c_to_l(&LabeledOrbit::Unit, x)? == CyclicClass::Unit
        && map_l_to_c(&CyclicClass::Unit, x)? == LabeledOrbit::Unit;
    if !unit_ok {
        violations.push(Violation::new(
            "unit summand",
            "n=0",
            CyclicClass::Unit,
            "other",
        ));
    }
    degrees.push(DegreeCount {
        n: 0,
        left_classes: 1,
        right_classes: 1,
    });
    for n in 1..=n_max {
        let tuples = label_tuples(x.letters(), n);
        let group = WreathGroup::cyclic(n, m).elements();
        let mut visited: HashSet<(ArcSystem, Vec<usize>)> = HashSet::new();
        let mut images: HashMap<CyclicClass, LabeledOrbit> = HashMap::new();
        let mut left = 0;
        for space in lattice_configurations(m, n, den) {
            for labels in &tuples {
                if visited.contains(&(space.clone(), labels.clone())) {
                    continue;
                }
                left += 1;
                let mut members: Vec<(ArcSystem, Vec<usize>)> = Vec::new();
                for g in &group {
                    let y = labeled_act(g, &space, labels, x)?;
                    if visited.insert(y.clone()) {
                        members.push(y);
                    }
                }
                let rep = members
                    .iter()
                    .min()
                    .expect("orbit contains the point")
                    .clone();
                let class = LabeledOrbit::Orbit {
                    space: rep.0.clone(),
                    labels: rep.1.clone(),
                };
                let image = map_pair_c_to_l(&rep.0, &rep.1, x)?;
                for (y, b) in &members {
                    let other = map_pair_c_to_l(y, b, x)?;
                    if other != image {
                        violations.push(Violation::new(
                            "constant on classes",
                            format!("{y:?} {b:?}"),
                            &image,
                            other,
                        ));
                        break;
                    }
                }
                let back = map_l_to_c(&image, x)?;
                if back != class {
                    violations.push(Violation::new(
                        "inverse",
                        format!("{class:?}"),
                        &class,
                        back,
                    ));
                }
                if let Some(prev) = images.insert(image.clone(), class.clone()) {
                    violations.push(Violation::new(
                        "injective",
                        format!("{image:?}"),
                        prev,
                        class,
                    ));
                }
            }
        }
        let mut right: BTreeSet<CyclicClass> = BTreeSet::new();
        for p in lattice_points(m, n - 1, den) {
            for labels in &tuples {
                right.insert(cyclic_class_of(&p, labels, x)?);
            }
        }
        let image_set: BTreeSet<CyclicClass> = images.keys().cloned().collect();
        if image_set != right {
            let missing = right.difference(&image_set).count();
            let extra = image_set.difference(&right).count();
            violations.push(Violation::new(
                "onto",
                format!("n={n}"),
                right.len(),
                format!("{missing} missing, {extra} outside"),
            ));
        }
        degrees.push(DegreeCount {
            n,
            left_classes: left,
            right_classes: right.len(),
        });
    }
    violations.sort();
    Ok(CycbarReport {
        m,
        letters: x.letters(),
        den,
        degrees,
        violations,
    })
}

/// Canonical form of `(p, a) ∈ Λ_m[q] × N_q R` in the realization: drop
/// points labeled by the unit, merge coincident points by multiplying their
/// labels, then take the least representative under the diagonal twist.
pub fn realize(
    p: &CyclicPoint,
    labels: &[usize],
    r: &FinCmMonoid,
) -> Result<CyclicClass, BarError> {
    check_labels(labels, r)?;
    if p.degree() + 1 != labels.len() {
        return Err(BarError::DegreeMismatch {
            expected: p.degree() + 1,
            got: labels.len(),
        });
    }
    let mut pt = p.clone();
    let mut a = labels.to_vec();
    loop {
        if a.iter().any(|&x| r.is_zero(x)) {
            return Ok(CyclicClass::Base);
        }
        let q = a.len() - 1;
        if q >= 1 {
            if let Some(k) = pt.t.iter().position(Rat::is_zero) {
                let mut t = pt.t.clone();
                if k < q {
                    a[k] = r.mul(a[k], a[k + 1]);
                    a.remove(k + 1);
                } else {
                    a[0] = r.mul(r.sigma[a[q]], a[0]);
                    a.pop();
                }
                t.remove(k);
                pt = CyclicPoint::new(pt.m, pt.r.clone(), t)?;
                continue;
            }
            if let Some(k) = a.iter().position(|&x| x == r.unit) {
                let mut t = pt.t.clone();
                let mut rr = pt.r.clone();
                if k >= 1 {
                    let moved = t.remove(k);
                    t[k - 1] += &moved;
                } else {
                    let first = t.remove(0);
                    rr += &first;
                    t[q - 1] += &first;
                }
                a.remove(k);
                pt = CyclicPoint::new(pt.m, rr, t)?;
                continue;
            }
        } else if a[0] == r.unit {
            return Ok(CyclicClass::Unit);
        }
        return cyclic_class_of(&pt, &a, r);
    }
}

/// The realization relations themselves: twists, degeneracies against
/// merged coordinates and faces against inserted zeros.
pub fn check_realization_relations<R: Rng + ?Sized>(
    r: &FinCmMonoid,
    q_max: usize,
    den: i64,
    trials: usize,
    rng: &mut R,
) -> (usize, Vec<Violation>) {
    let bar = CyclicBar::new(r);
    let mut out = Vec::new();
    let mut cases = 0;
    for _ in 0..trials {
        let q = rng.gen_range(0..=q_max);
        let p = sample_point(rng, r.m, q, den);
        let a: Vec<usize> = (0..=q).map(|_| rng.gen_range(0..r.size())).collect();
        let base = realize(&p, &a, r);
        let w = || format!("p={p:?} a={a:?}");
        cases += 1;
        let tw = act_gen(Gen::Twist, &p)
            .map_err(BarError::from)
            .and_then(|tp| realize(&tp, &bar.twist(&a), r));
        expect_eq(&mut out, "twist relation", w, base.clone(), tw);
        // degree q+1 point, degree q tuple
        let p1 = sample_point(rng, r.m, q + 1, den);
        for i in 0..=q {
            cases += 1;
            let lhs = act_gen(Gen::Face(i), &p1)
                .map_err(BarError::from)
                .and_then(|y| realize(&y, &a, r));
            let rhs = bar.degeneracy(i, &a).and_then(|b| realize(&p1, &b, r));
            expect_eq(
                &mut out,
                "degeneracy relation",
                || format!("p={p1:?} a={a:?} i={i}"),
                lhs,
                rhs,
            );
        }
        if q >= 1 {
            // degree q-1 point with a zero inserted, degree q tuple
            let p0 = sample_point(rng, r.m, q - 1, den);
            for i in 0..=q {
                let inserted = if i == 0 {
                    let mut t = vec![Rat::zero()];
                    t.extend(p0.t.iter().cloned());
                    CyclicPoint::new(p0.m, p0.r.clone(), t).map_err(BarError::from)
                } else {
                    act_gen(Gen::Degen(i - 1), &p0).map_err(BarError::from)
                };
                cases += 1;
                let lhs = inserted.and_then(|y| realize(&y, &a, r));
                let rhs = bar.face(i, &a).and_then(|b| realize(&p0, &b, r));
                expect_eq(
                    &mut out,
                    "face relation",
                    || format!("p={p0:?} a={a:?} i={i}"),
                    lhs,
                    rhs,
                );
            }
        }
    }
    out.sort();
    (cases, out)
}

fn inner_points(k: usize) -> Vec<DiskPair> {
    (0..k)
        .map(|j| {
            DiskPair::new(
                Rat::new(2 * j as i64 + 1, k as i64) - Rat::one(),
                Rat::zero(),
            )
        })
        .collect()
}

/// The two parallel maps `C̄^c 𝕋R ⇉ C̄^c R` agree after the comparison map
/// and realization: evaluating word labels against composing each point
/// with as many coincident points as its word has letters.
pub fn check_coequalizer<R: Rng + ?Sized>(
    r: &FinCmMonoid,
    n_max: usize,
    word_len: usize,
    den: i64,
    trials: usize,
    rng: &mut R,
) -> (usize, Vec<Violation>) {
    let t = FreeMonad { bound: word_len };
    let mut out = Vec::new();
    let mut cases = 0;
    let to_real = |x: &ArcSystem, a: &[usize]| -> Result<CyclicClass, BarError> {
        if a.is_empty() {
            return Ok(CyclicClass::Unit);
        }
        match map_pair_c_to_l(x, a, r)? {
            CyclicClass::Class { point, labels } => realize(&point, &labels, r),
            other => Ok(other),
        }
    };
    for _ in 0..trials {
        let n = rng.gen_range(1..=n_max);
        let x = sample_ucc(rng, r.m, n, den);
        let words: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let k = rng.gen_range(0..=word_len);
                (0..k).map(|_| rng.gen_range(0..r.size())).collect()
            })
            .collect();
        let evaluated: Vec<usize> = words
            .iter()
            .map(|w| {
                match t.evaluate(r, &TElem::Word(w.iter().map(|&a| TElem::Leaf(a)).collect())) {
                    TElem::Leaf(a) => a,
                    _ => r.zero.expect("only a zero evaluates to the basepoint"),
                }
            })
            .collect();
        let lhs = to_real(&x, &evaluated);
        let inners: Vec<Vec<DiskPair>> = words.iter().map(|w| inner_points(w.len())).collect();
        let flat: Vec<usize> = words.concat();
        let rhs = compose_uec(&x, &inners)
            .map_err(BarError::from)
            .and_then(|y| to_real(&y, &flat));
        cases += 1;
        expect_eq(
            &mut out,
            "coequalizer",
            || format!("x={x:?} words={words:?}"),
            lhs,
            rhs,
        );
    }
    out.sort();
    (cases, out)
}

/// Ways to cut a word of length `n` into `q+1` consecutive, possibly empty,
/// pieces: the `q`-simplices of the cyclic bar construction on a free monoid
/// lying over one word.
pub fn summand_count(n: usize, q: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..q as u64 {
        c = c * (n as u64 + k + 1) / (k + 1);
    }
    c
}

/// Group the labeled classes of a sample by arity.
pub fn classes_by_arity(classes: &BTreeSet<LabeledOrbit>) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for c in classes {
        let n = match c {
            LabeledOrbit::Orbit { labels, .. } => labels.len(),
            _ => 0,
        };
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn builtin_tables_validate() {
        for m in 1..=4 {
            for (name, r) in FinCmMonoid::builtins(m) {
                assert!(r.validate().is_ok(), "{name}");
            }
        }
        assert!(FinCmMonoid::band(3).is_err());
        assert_eq!(FinCmMonoid::f4(3).unwrap().sigma_order(), 3);
        assert_eq!(FinCmMonoid::z5(4).unwrap().sigma_order(), 4);
    }

    #[test]
    fn face_and_twist_examples() {
        let r = FinCmMonoid::band(2).unwrap();
        let bar = CyclicBar::new(&r);
        assert_eq!(bar.face(0, &[1, 2]).unwrap(), vec![1]);
        assert_eq!(bar.twist(&[1, 2]), vec![1, 1]);
        assert_eq!(bar.twist_pow(&[1, 0], 4), vec![1, 0]);
        assert_ne!(bar.twist_pow(&[1, 0], 2), vec![1, 0]);
        let c2 = FinCmMonoid::c2(1);
        let bar = CyclicBar::new(&c2);
        assert_eq!(bar.twist_pow(&[0, 1], 2), vec![0, 1]);
        assert!(bar.face(2, &[0, 1]).is_err());
    }

    #[test]
    fn cyclic_relations_hold_for_builtins() {
        let mut g = rng(1);
        for m in 1..=4 {
            for (name, r) in FinCmMonoid::builtins(m) {
                let (_, v) = verify_cyclic_object(&CyclicBar::new(&r), 3, 200, &mut g);
                assert!(v.is_empty(), "{name} m={m}: {}", v[0]);
            }
        }
    }

    #[test]
    fn twist_order_detects_missing_sigma() {
        let mut g = rng(2);
        let r = FinCmMonoid::band(2).unwrap();
        let good = CyclicBar::new(&r);
        let bad = CyclicBar {
            monoid: &r,
            twist_sigma: false,
        };
        for q in 0..=3 {
            assert_eq!(twist_order(&good, q, 100, &mut g), 2 * (q + 1));
            assert_eq!(twist_order(&bad, q, 100, &mut g), q + 1);
            let (_, v) = verify_cyclic_object(&bad, q, 100, &mut g);
            assert!(v.is_empty());
        }
    }

    #[test]
    fn monad_examples() {
        let t = FreeMonad { bound: 4 };
        let x = TElem::Leaf(1);
        assert_eq!(t.unit(x.clone()), TElem::Word(vec![x.clone()]));
        let ww = TElem::Word(vec![
            TElem::Word(vec![x.clone()]),
            TElem::Word(vec![TElem::Leaf(2), x.clone()]),
        ]);
        assert_eq!(
            t.mult(&ww),
            TElem::Word(vec![x.clone(), TElem::Leaf(2), x.clone()])
        );
        let long = TElem::Word(vec![x.clone(); 3]);
        assert_eq!(t.concat(&long, &long), TElem::Overflow);
        assert_eq!(t.word(vec![x, TElem::Base]), TElem::Base);
    }

    #[test]
    fn monad_laws() {
        let t = FreeMonad { bound: 4 };
        let x = PointedCmSet::cycled(3, 3).unwrap();
        let r = FinCmMonoid::nil(3);
        let (cases, _, v) = check_monad_laws(&t, &x, &r, &mut rng(3), 300);
        assert!(v.is_empty(), "{}", v[0]);
        assert!(cases > 1000);
    }

    #[test]
    fn bar_examples_and_identities() {
        let r = FinCmMonoid::c2(1);
        let bar = MonadicBar {
            monad: FreeMonad { bound: 8 },
            monoid: &r,
        };
        let w = TElem::Word(vec![TElem::Leaf(1), TElem::Leaf(1)]);
        assert_eq!(bar.monad.evaluate(&r, &w), TElem::Leaf(0));
        let (_, _, v) = check_bar_identities(&bar, 4, 60, &mut rng(5));
        assert!(v.is_empty(), "{}", v[0]);
    }

    #[test]
    fn comparison_laws() {
        let x = PointedCmSet::cycled(2, 2).unwrap();
        let (_, v) = check_comparison_laws(&x, 3, 4, 40, &mut rng(7));
        assert!(v.is_empty(), "{}", v[0]);
        let r = FinCmMonoid::f4(3).unwrap();
        let (_, v) = check_comparison_laws(&r, 3, 3, 30, &mut rng(8));
        assert!(v.is_empty(), "{}", v[0]);
    }

    #[test]
    fn unit_and_base_classes() {
        let x = PointedCmSet::fixed(1, 1);
        assert_eq!(
            orbit_of(&ArcSystem::empty(1), &[], &x).unwrap(),
            LabeledOrbit::Unit
        );
        assert_eq!(
            map_c_to_l(&LabeledOrbit::Unit, &x).unwrap(),
            CyclicClass::Unit
        );
        let y = sample_ucc(&mut rng(1), 1, 2, 4);
        assert_eq!(orbit_of(&y, &[1, 0], &x).unwrap(), LabeledOrbit::Base);
    }

    #[test]
    fn free_case_counts_agree() {
        let x = PointedCmSet::fixed(1, 1);
        let rep = check_thm_cycbar_free(&x, 2, 4).unwrap();
        assert!(rep.violations.is_empty(), "{}", rep.violations[0]);
        for d in &rep.degrees {
            assert_eq!(d.left_classes, d.right_classes);
        }
        // degree one: base angles times one letter
        assert_eq!(rep.degrees[1].left_classes, 4);
        let x = PointedCmSet::cycled(2, 2).unwrap();
        let rep = check_thm_cycbar_free(&x, 2, 2).unwrap();
        assert!(rep.violations.is_empty(), "{}", rep.violations[0]);
        let only_base = PointedCmSet::fixed(0, 2);
        let rep = check_thm_cycbar_free(&only_base, 2, 2).unwrap();
        assert!(rep.degrees[1..]
            .iter()
            .all(|d| d.left_classes == 0 && d.right_classes == 0));
    }

    #[test]
    fn realization_relations_and_coequalizer() {
        let mut g = rng(11);
        for m in 1..=4 {
            for (name, r) in FinCmMonoid::builtins(m) {
                let (_, v) = check_realization_relations(&r, 3, 4, 40, &mut g);
                assert!(v.is_empty(), "{name} m={m}: {}", v[0]);
                let (_, v) = check_coequalizer(&r, 3, 3, 4, 40, &mut g);
                assert!(v.is_empty(), "{name} m={m}: {}", v[0]);
            }
        }
    }

    #[test]
    fn summand_counts() {
        assert_eq!(summand_count(2, 0), 1);
        assert_eq!(summand_count(2, 1), 3);
        assert_eq!(summand_count(3, 2), 10);
    }
}
