//! The m-cyclic category: words in faces, degeneracies and twists, their
//! normal forms, and the point model `ℝ/mℤ × Δ[q]` of its representables.
//!
//! Operators are written as compositions and applied from the right. Each
//! letter acts on degree `q` objects: `d_i` lowers the degree, `s_i` raises
//! it and `τ_q` keeps it. The relations used for rewriting are
//!
//! ```text
//! d_0 τ_q = d_q            d_i τ_q = τ_{q-1} d_{i-1}   (1 ≤ i ≤ q)
//! s_0 τ_q = τ_{q+1}² s_q   s_i τ_q = τ_{q+1} s_{i-1}   (1 ≤ i ≤ q)
//! τ_q^{m(q+1)} = id
//! ```
//!
//! together with the simplicial identities.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circle::{circle_act, wreath_act, ArcPair, ArcSystem, Variant};
use crate::error::{CyclicError, EmbedError};
use crate::exact::Rat;
use crate::groups::{upsilon, FiniteGroup, WreathElem, WreathGroup};
use crate::report::{expect_eq, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Face(usize),
    Degen(usize),
    Twist,
}

impl Gen {
    fn target(self, source: usize) -> Option<usize> {
        match self {
            Gen::Face(i) => (source >= 1 && i <= source).then(|| source - 1),
            Gen::Degen(i) => (i <= source).then_some(source + 1),
            Gen::Twist => Some(source),
        }
    }

    /// Source degree given the target degree.
    fn source(self, target: usize) -> Option<usize> {
        match self {
            Gen::Face(_) => Some(target + 1),
            Gen::Degen(_) => target.checked_sub(1),
            Gen::Twist => Some(target),
        }
    }
}

/// A composite `g_1 ∘ g_2 ∘ .. ∘ g_k` of generators acting on degree
/// `source` objects; `gens[0]` is applied last.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    pub m: u32,
    pub source: usize,
    pub gens: Vec<Gen>,
}

impl CyclicWord {
    pub fn new(m: u32, source: usize, gens: Vec<Gen>) -> Result<CyclicWord, CyclicError> {
        if m == 0 {
            return Err(CyclicError::IllFormed("m must be positive".into()));
        }
        let w = CyclicWord { m, source, gens };
        w.degrees()?;
        Ok(w)
    }

    pub fn identity(m: u32, q: usize) -> CyclicWord {
        CyclicWord {
            m,
            source: q,
            gens: Vec::new(),
        }
    }

    /// Source degree of every letter.
    pub fn degrees(&self) -> Result<Vec<usize>, CyclicError> {
        let mut out = vec![0; self.gens.len()];
        let mut q = self.source;
        for k in (0..self.gens.len()).rev() {
            out[k] = q;
            q = self.gens[k].target(q).ok_or_else(|| {
                CyclicError::IllFormed(format!(
                    "{} cannot act in degree {q}",
                    show_gen(self.gens[k], q)
                ))
            })?;
        }
        Ok(out)
    }

    pub fn target(&self) -> usize {
        let mut q = self.source;
        for g in self.gens.iter().rev() {
            q = g.target(q).expect("validated word");
        }
        q
    }

    pub fn is_identity(&self) -> bool {
        self.gens.is_empty()
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &CyclicWord) -> Result<CyclicWord, CyclicError> {
        if other.target() != self.source || other.m != self.m {
            return Err(CyclicError::DegreeMismatch {
                expected: self.source,
                got: other.target(),
            });
        }
        let mut gens = self.gens.clone();
        gens.extend(&other.gens);
        CyclicWord::new(self.m, other.source, gens)
    }

    /// Parse dot separated letters such as `d0.t1` or `t2^2.s1`. The source
    /// degree is taken from `source` when given, otherwise from a twist.
    pub fn parse(text: &str, m: u32, source: Option<usize>) -> Result<CyclicWord, CyclicError> {
        let bad = || CyclicError::Parse(text.to_string());
        let mut letters: Vec<(Gen, Option<usize>)> = Vec::new();
        let text = text.trim();
        if !(text.is_empty() || text == "id") {
            for tok in text.split('.') {
                let tok = tok.trim();
                let (head, power) = match tok.split_once('^') {
                    Some((h, p)) => (h, p.parse::<usize>().map_err(|_| bad())?),
                    None => (tok, 1),
                };
                let mut chars = head.chars();
                let kind = chars.next().ok_or_else(bad)?;
                let idx: usize = chars.as_str().parse().map_err(|_| bad())?;
                let letter = match kind {
                    'd' => (Gen::Face(idx), None),
                    's' => (Gen::Degen(idx), None),
                    't' => (Gen::Twist, Some(idx)),
                    _ => return Err(bad()),
                };
                if power != 1 && kind != 't' {
                    return Err(bad());
                }
                letters.extend(std::iter::repeat_n(letter, power));
            }
        }
        let gens: Vec<Gen> = letters.iter().map(|l| l.0).collect();
        let source = match source {
            Some(q) => q,
            None => {
                let (k, q) = letters
                    .iter()
                    .enumerate()
                    .find_map(|(k, l)| l.1.map(|q| (k, q)))
                    .ok_or_else(|| {
                        CyclicError::IllFormed("source degree needed: give q or a twist".into())
                    })?;
                let mut q = q;
                for g in &gens[k + 1..] {
                    q = g.source(q).ok_or_else(|| {
                        CyclicError::IllFormed(format!("no source degree for {text}"))
                    })?;
                }
                q
            }
        };
        let w = CyclicWord::new(m, source, gens)?;
        let degs = w.degrees()?;
        for (k, l) in letters.iter().enumerate() {
            if let Some(q) = l.1 {
                if degs[k] != q {
                    return Err(CyclicError::DegreeMismatch {
                        expected: q,
                        got: degs[k],
                    });
                }
            }
        }
        Ok(w)
    }
}

fn show_gen(g: Gen, q: usize) -> String {
    match g {
        Gen::Face(i) => format!("d{i}"),
        Gen::Degen(i) => format!("s{i}"),
        Gen::Twist => format!("t{q}"),
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "id");
        }
        let degs = self.degrees().map_err(|_| fmt::Error)?;
        let mut parts = Vec::new();
        let mut k = 0;
        while k < self.gens.len() {
            let g = self.gens[k];
            let mut run = 1;
            if g == Gen::Twist {
                while k + run < self.gens.len() && self.gens[k + run] == Gen::Twist {
                    run += 1;
                }
            }
            let s = show_gen(g, degs[k]);
            parts.push(if run > 1 { format!("{s}^{run}") } else { s });
            k += run;
        }
        write!(f, "{}", parts.join("."))
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (m={}, from degree {})", self.m, self.source)
    }
}

/// All one-step rewrites of `w` as (position, result) pairs.
fn redexes(w: &CyclicWord) -> Vec<Vec<Gen>> {
    let degs = w.degrees().expect("validated word");
    let g = &w.gens;
    let mut out = Vec::new();
    let splice = |k: usize, len: usize, with: &[Gen]| {
        let mut v = g[..k].to_vec();
        v.extend_from_slice(with);
        v.extend_from_slice(&g[k + len..]);
        v
    };
    for k in 0..g.len() {
        if g[k] == Gen::Twist {
            let period = w.m as usize * (degs[k] + 1);
            if k + period <= g.len() && g[k..k + period].iter().all(|&x| x == Gen::Twist) {
                out.push(splice(k, period, &[]));
            }
        }
        if k + 1 >= g.len() {
            continue;
        }
        let q = degs[k + 1];
        let rep: Option<Vec<Gen>> = match (g[k], g[k + 1]) {
            (Gen::Face(0), Gen::Twist) => Some(vec![Gen::Face(q)]),
            (Gen::Face(i), Gen::Twist) => Some(vec![Gen::Twist, Gen::Face(i - 1)]),
            (Gen::Degen(0), Gen::Twist) => Some(vec![Gen::Twist, Gen::Twist, Gen::Degen(q)]),
            (Gen::Degen(i), Gen::Twist) => Some(vec![Gen::Twist, Gen::Degen(i - 1)]),
            (Gen::Face(i), Gen::Degen(j)) => Some(if i < j {
                vec![Gen::Degen(j - 1), Gen::Face(i)]
            } else if i == j || i == j + 1 {
                vec![]
            } else {
                vec![Gen::Degen(j), Gen::Face(i - 1)]
            }),
            (Gen::Face(a), Gen::Face(b)) if a >= b => Some(vec![Gen::Face(b), Gen::Face(a + 1)]),
            (Gen::Degen(a), Gen::Degen(b)) if a <= b => {
                Some(vec![Gen::Degen(b + 1), Gen::Degen(a)])
            }
            _ => None,
        };
        if let Some(rep) = rep {
            out.push(splice(k, 2, &rep));
        }
    }
    out
}

/// All single rewriting steps from `w`.
pub fn rewrite_steps(w: &CyclicWord) -> Vec<CyclicWord> {
    redexes(w)
        .into_iter()
        .map(|gens| CyclicWord {
            m: w.m,
            source: w.source,
            gens,
        })
        .collect()
}

/// Normalize, choosing which redex to contract with `pick` (given the number
/// of available redexes).
pub fn normalize_with(w: &CyclicWord, mut pick: impl FnMut(usize) -> usize) -> CyclicWord {
    let mut cur = w.clone();
    loop {
        let mut steps = rewrite_steps(&cur);
        if steps.is_empty() {
            return cur;
        }
        let k = pick(steps.len()) % steps.len();
        cur = steps.swap_remove(k);
    }
}

/// The normal form `τ^k ∘ s_{j_1} .. s_{j_b} ∘ d_{i_1} .. d_{i_a}` with
/// `j_1 > .. > j_b`, `i_1 < .. < i_a` and `k < m(q+1)`.
pub fn normalize_word(w: &CyclicWord) -> Result<CyclicWord, CyclicError> {
    w.degrees()?;
    Ok(normalize_with(w, |_| 0))
}

/// Every normal form reachable from `w` along any rewriting path.
pub fn all_normal_forms(w: &CyclicWord) -> BTreeSet<CyclicWord> {
    let mut seen: HashSet<CyclicWord> = HashSet::new();
    let mut stack = vec![w.clone()];
    let mut out = BTreeSet::new();
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        let next = rewrite_steps(&cur);
        if next.is_empty() {
            out.insert(cur);
        }
        stack.extend(next);
    }
    out
}

/// Whether `w` has the shape of a normal form.
pub fn is_normal(w: &CyclicWord) -> bool {
    rewrite_steps(w).is_empty()
}

/// A point `(r + mℤ, t_0, .., t_q)` of `ℝ/mℤ × Δ[q]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CyclicPoint {
    pub m: u32,
    pub r: Rat,
    pub t: Vec<Rat>,
}

impl CyclicPoint {
    /// Build a point, reducing `r` mod `m`.
    pub fn new(m: u32, r: Rat, t: Vec<Rat>) -> Result<CyclicPoint, CyclicError> {
        let p = CyclicPoint {
            m,
            r: r.rem_euclid(&Rat::from_int(m as i64)),
            t,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), CyclicError> {
        if self.m == 0 {
            return Err(CyclicError::InvalidPoint("m must be positive".into()));
        }
        if self.t.is_empty() {
            return Err(CyclicError::InvalidPoint(
                "a simplex needs at least one coordinate".into(),
            ));
        }
        if self.r.is_negative() || self.r >= Rat::from_int(self.m as i64) {
            return Err(CyclicError::InvalidPoint(format!(
                "r = {} not reduced mod {}",
                self.r, self.m
            )));
        }
        if self.t.iter().any(Rat::is_negative) {
            return Err(CyclicError::InvalidPoint(
                "negative barycentric coordinate".into(),
            ));
        }
        if Rat::sum(&self.t) != Rat::one() {
            return Err(CyclicError::InvalidPoint(
                "barycentric coordinates do not sum to 1".into(),
            ));
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.t.len() - 1
    }

    fn with(&self, r: Rat, t: Vec<Rat>) -> CyclicPoint {
        CyclicPoint {
            m: self.m,
            r: r.rem_euclid(&Rat::from_int(self.m as i64)),
            t,
        }
    }
}

/// Apply one generator to a point of the matching degree.
pub fn act_gen(g: Gen, p: &CyclicPoint) -> Result<CyclicPoint, CyclicError> {
    let q = p.degree();
    g.target(q).ok_or(CyclicError::DegreeMismatch {
        expected: q,
        got: q,
    })?;
    let t = &p.t;
    Ok(match g {
        Gen::Twist => {
            let mut nt = Vec::with_capacity(q + 1);
            nt.push(t[q].clone());
            nt.extend_from_slice(&t[..q]);
            p.with(&p.r - &t[q], nt)
        }
        Gen::Face(i) if i < q => {
            let mut nt = t[..i].to_vec();
            nt.push(&t[i] + &t[i + 1]);
            nt.extend_from_slice(&t[i + 2..]);
            p.with(p.r.clone(), nt)
        }
        Gen::Face(_) => {
            let mut nt = vec![&t[0] + &t[q]];
            nt.extend_from_slice(&t[1..q]);
            p.with(&p.r - &t[q], nt)
        }
        Gen::Degen(i) => {
            let mut nt = t[..=i].to_vec();
            nt.push(Rat::zero());
            nt.extend_from_slice(&t[i + 1..]);
            p.with(p.r.clone(), nt)
        }
    })
}

/// Apply a word, rightmost letter first.
pub fn act_on_point(w: &CyclicWord, p: &CyclicPoint) -> Result<CyclicPoint, CyclicError> {
    if w.source != p.degree() {
        return Err(CyclicError::DegreeMismatch {
            expected: w.source,
            got: p.degree(),
        });
    }
    if w.m != p.m {
        return Err(CyclicError::IllFormed(format!(
            "word for m={} on point for m={}",
            w.m, p.m
        )));
    }
    w.gens
        .iter()
        .rev()
        .try_fold(p.clone(), |acc, &g| act_gen(g, &acc))
}

/// Rotation by `theta` turns: `r ↦ r + mθ`.
pub fn circle_act_point(theta: &Rat, p: &CyclicPoint) -> CyclicPoint {
    p.with(&p.r + &theta.mul_int(p.m as i64), p.t.clone())
}

/// The configuration of `q+1` points with `ζ_{j+1} = (r + t_0 + .. + t_{j-1})/m`
/// and gaps `φ_j = t_{j-1}/m`.
pub fn lambda_to_ucc(p: &CyclicPoint) -> Result<ArcSystem, CyclicError> {
    p.validate()?;
    let m = p.m as i64;
    let mut acc = p.r.clone();
    let mut pairs = Vec::with_capacity(p.t.len());
    let mut phi = Vec::with_capacity(p.t.len());
    for tj in &p.t {
        pairs.push(ArcPair::new(acc.div_int(m), Rat::zero()));
        phi.push(tj.div_int(m));
        acc += tj;
    }
    Ok(ArcSystem::new(p.m, pairs, phi, Variant::UCc)?)
}

/// Read `r = m·ζ_1` and `t_j = m·φ_{j+1}` back off a configuration of points.
/// This inverts [`lambda_to_ucc`] on its image, where each center is exactly
/// the previous one advanced by its gap.
pub fn ucc_to_lambda(x: &ArcSystem) -> Result<CyclicPoint, CyclicError> {
    if x.variant != Variant::UCc && !(x.variant == Variant::UEc && x.all_radii_zero()) {
        return Err(EmbedError::WrongVariant {
            expected: "uCc",
            got: x.variant.label(),
        }
        .into());
    }
    if x.arity() == 0 {
        return Err(CyclicError::InvalidPoint("no points to read".into()));
    }
    let m = x.m as i64;
    let t = x.phi.iter().map(|g| g.mul_int(m)).collect();
    CyclicPoint::new(x.m, x.pairs[0].zeta.mul_int(m), t)
}

/// Whether every center of `x` is the previous one advanced by its gap on
/// the circle itself (not only modulo `1/m`).
pub fn is_exact_lift(x: &ArcSystem) -> bool {
    let n = x.arity();
    (0..n.saturating_sub(1)).all(|j| {
        let d = (&x.pairs[j + 1].zeta - &x.pairs[j].zeta - &x.phi[j]).rem_euclid(&Rat::one());
        d.is_zero()
    })
}

/// Sample a point whose coordinates have denominator dividing `den`.
pub fn sample_point<R: Rng + ?Sized>(rng: &mut R, m: u32, q: usize, den: i64) -> CyclicPoint {
    let mut cuts: Vec<i64> = (0..q).map(|_| rng.gen_range(0..=den)).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(den);
    let t = cuts
        .windows(2)
        .map(|w| Rat::new(w[1] - w[0], den))
        .collect();
    let r = Rat::new(rng.gen_range(0..m as i64 * den), den);
    CyclicPoint::new(m, r, t).expect("sampler produces valid points")
}

/// A random well-formed word from degree `q` of at most `len` letters, with
/// intermediate degrees bounded by `q_max`.
pub fn sample_word<R: Rng + ?Sized>(
    rng: &mut R,
    m: u32,
    q: usize,
    len: usize,
    q_max: usize,
) -> CyclicWord {
    // build from the right so the source degree is fixed
    let mut gens = Vec::with_capacity(len);
    let mut cur = q;
    for _ in 0..len {
        let choice = rng.gen_range(0..3);
        let g = match choice {
            0 if cur >= 1 => Gen::Face(rng.gen_range(0..=cur)),
            1 if cur < q_max => Gen::Degen(rng.gen_range(0..=cur)),
            _ => Gen::Twist,
        };
        cur = g.target(cur).expect("chosen to fit");
        gens.push(g);
    }
    gens.reverse();
    CyclicWord::new(m, q, gens).expect("sampler produces valid words")
}

fn twist_word(m: u32, q: usize, k: usize) -> CyclicWord {
    CyclicWord::new(m, q, vec![Gen::Twist; k]).expect("twists fit any degree")
}

/// Confluence of the rewriting system: every word of length at most
/// `exhaustive_len` over generators up to degree `q_max` has a unique normal
/// form along all rewriting paths, and random words up to `random_len`
/// normalize to the same word under random strategies.
pub fn check_confluence<R: Rng + ?Sized>(
    rng: &mut R,
    m_max: u32,
    q_max: usize,
    exhaustive_len: usize,
    random_len: usize,
    random_trials: usize,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        for q in 0..=q_max {
            let mut frontier = vec![CyclicWord::identity(m, q)];
            for _ in 0..exhaustive_len {
                let mut next = Vec::new();
                for w in &frontier {
                    // prepend every generator that fits the current target
                    let t = w.target();
                    let mut cands = vec![Gen::Twist];
                    cands.extend((0..=t).map(Gen::Degen).filter(|_| t < q_max + 1));
                    if t >= 1 {
                        cands.extend((0..=t).map(Gen::Face));
                    }
                    for g in cands {
                        let mut gens = vec![g];
                        gens.extend(&w.gens);
                        next.push(CyclicWord { m, source: q, gens });
                    }
                }
                for w in &next {
                    let forms = all_normal_forms(w);
                    if forms.len() != 1 {
                        out.push(Violation::new(
                            "unique normal form",
                            format!("{w:?}"),
                            1,
                            forms,
                        ));
                    }
                }
                frontier = next;
            }
            // critical pairs with the twist period
            let period = m as usize * (q + 1);
            for g in [
                Gen::Face(0),
                Gen::Face(q.min(1)),
                Gen::Degen(0),
                Gen::Degen(q),
            ] {
                if g.target(q).is_none() {
                    continue;
                }
                let mut gens = vec![g];
                gens.extend(std::iter::repeat_n(Gen::Twist, period + 1));
                let w = CyclicWord { m, source: q, gens };
                let forms = all_normal_forms(&w);
                if forms.len() != 1 {
                    out.push(Violation::new(
                        "unique normal form",
                        format!("{w:?}"),
                        1,
                        forms,
                    ));
                }
            }
        }
    }
    for _ in 0..random_trials {
        let m = rng.gen_range(1..=m_max);
        let q = rng.gen_range(0..=q_max);
        let len = rng.gen_range(0..=random_len);
        let w = sample_word(rng, m, q, len, q_max);
        let first = normalize_with(&w, |_| 0);
        if !is_normal(&first) {
            out.push(Violation::new(
                "normal form shape",
                format!("{w:?}"),
                "irreducible",
                &first,
            ));
        }
        for _ in 0..3 {
            let other = normalize_with(&w, |k| rng.gen_range(0..k));
            if other != first {
                out.push(Violation::new(
                    "confluence",
                    format!("{w:?}"),
                    &first,
                    &other,
                ));
            }
        }
    }
    out
}

/// Equal normal forms act equally: the word and its normal form agree on a
/// sampled point, and the relations hold as point maps.
pub fn check_word_actions<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    m_max: u32,
    q_max: usize,
    len: usize,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for _ in 0..trials {
        let m = rng.gen_range(1..=m_max);
        let q = rng.gen_range(0..=q_max);
        let n_letters = rng.gen_range(0..=len);
        let w = sample_word(rng, m, q, n_letters, q_max + 2);
        let p = sample_point(rng, m, q, 12);
        let nf = normalize_word(&w);
        let lhs = act_on_point(&w, &p);
        let rhs = nf.and_then(|v| act_on_point(&v, &p));
        expect_eq(
            &mut out,
            "normal form action",
            || format!("w={w:?} p={p:?}"),
            lhs,
            rhs,
        );
    }
    out
}

/// Distinct normal forms with at most `max_letters` simplicial letters act
/// differently on a generic point.
pub fn check_faithfulness(m: u32, q: usize, max_letters: usize) -> Vec<Violation> {
    // generic: distinct subset sums and an irrational-looking base point
    let den: i64 = (1..=(q as i64 + 1)).map(|k| 1 << k).sum::<i64>() + 1;
    let mut t: Vec<Rat> = (1..=q as i64 + 1).map(|k| Rat::new(1 << k, den)).collect();
    t[0] = &t[0] + &Rat::new(1, den);
    let p = CyclicPoint::new(m, Rat::new(1, 7 * den), t).expect("generic point");
    let mut forms: BTreeSet<CyclicWord> = BTreeSet::new();
    let mut frontier = vec![CyclicWord::identity(m, q)];
    for _ in 0..max_letters {
        let mut next = Vec::new();
        for w in &frontier {
            let tgt = w.target();
            let mut cands: Vec<Gen> = (0..=tgt).map(Gen::Degen).collect();
            if tgt >= 1 {
                cands.extend((0..=tgt).map(Gen::Face));
            }
            for g in cands {
                let mut gens = vec![g];
                gens.extend(&w.gens);
                let v = CyclicWord { m, source: q, gens };
                forms.insert(normalize_with(&v, |_| 0));
                next.push(v);
            }
        }
        frontier = next;
    }
    forms.insert(CyclicWord::identity(m, q));
    let mut with_twists = BTreeSet::new();
    for f in &forms {
        let period = m as usize * (f.target() + 1);
        for k in 0..period {
            let w = twist_word(m, f.target(), k)
                .then_after(f)
                .expect("degrees chain");
            with_twists.insert(normalize_with(&w, |_| 0));
        }
    }
    let mut seen: BTreeMap<CyclicPoint, CyclicWord> = BTreeMap::new();
    let mut out = Vec::new();
    for w in with_twists {
        match act_on_point(&w, &p) {
            Ok(img) => {
                if let Some(prev) = seen.insert(img.clone(), w.clone()) {
                    out.push(Violation::new(
                        "faithful action",
                        format!("{prev:?} vs {w:?}"),
                        "distinct images",
                        img,
                    ));
                }
            }
            Err(e) => out.push(Violation::new(
                "faithful action",
                format!("{w:?}"),
                "an image",
                e,
            )),
        }
    }
    out
}

/// Round trips, `τ ↔ υ` intertwining and rotation equivariance of the map to
/// configurations of points.
pub fn check_lambda_iso<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    m_max: u32,
    q_max: usize,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for _ in 0..trials {
        let m = rng.gen_range(1..=m_max);
        let q = rng.gen_range(0..=q_max);
        let p = sample_point(rng, m, q, 12);
        let x = lambda_to_ucc(&p);
        let back = x.clone().and_then(|y| ucc_to_lambda(&y));
        expect_eq(
            &mut out,
            "round trip",
            || format!("{p:?}"),
            Ok::<_, CyclicError>(p.clone()),
            back,
        );

        let tp = act_gen(Gen::Twist, &p).and_then(|y| lambda_to_ucc(&y));
        let ux = x
            .clone()
            .and_then(|y| Ok(wreath_act(&upsilon(m, q + 1), &y)?));
        expect_eq(
            &mut out,
            "twist intertwines upsilon",
            || format!("{p:?}"),
            tp,
            ux,
        );

        let theta = Rat::new(rng.gen_range(0..60), 60);
        let lhs = lambda_to_ucc(&circle_act_point(&theta, &p));
        let rhs = x.map(|y| circle_act(&theta, &y));
        expect_eq(
            &mut out,
            "rotation equivariance",
            || format!("{p:?} theta={theta}"),
            lhs,
            rhs,
        );
    }
    out
}

/// Class counts of the lattice comparison between `Λ_m[q] ×_{C_{m(q+1)}} G`
/// and configurations of `q+1` points, `G = Z_{q+1} ≀ C_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCount {
    pub m: u32,
    pub q: usize,
    pub den: i64,
    pub left_classes: usize,
    pub right_points: usize,
    pub violations: Vec<Violation>,
}

/// Every lattice point of `ℝ/mℤ × Δ[q]` with coordinates in `(1/den)ℤ`.
pub fn lattice_points(m: u32, q: usize, den: i64) -> Vec<CyclicPoint> {
    let mut comps: Vec<Vec<i64>> = vec![vec![]];
    for slot in 0..=q {
        let mut next = Vec::new();
        for c in comps {
            let used: i64 = c.iter().sum();
            if slot == q {
                let mut d = c.clone();
                d.push(den - used);
                next.push(d);
            } else {
                for k in 0..=den - used {
                    let mut d = c.clone();
                    d.push(k);
                    next.push(d);
                }
            }
        }
        comps = next;
    }
    let mut out = Vec::new();
    for a in 0..m as i64 * den {
        for c in &comps {
            let t = c.iter().map(|&k| Rat::new(k, den)).collect();
            out.push(CyclicPoint::new(m, Rat::new(a, den), t).expect("lattice point"));
        }
    }
    out
}

/// Every configuration of `n` points with `ζ_1 ∈ (1/(m·den))ℤ` and gaps in
/// `(1/(m·den))ℤ`.
pub fn lattice_configurations(m: u32, n: usize, den: i64) -> Vec<ArcSystem> {
    if n == 0 {
        return vec![ArcSystem::empty(m)];
    }
    let c = Rat::new(1, m as i64);
    let mut out = Vec::new();
    for p in lattice_points(1, n - 1, den) {
        // p.r ranges over (1/den)ℤ mod 1; spread it over the m sheets
        for sheet in 0..m as i64 {
            let z1 = (&p.r + &Rat::from_int(sheet)).div_int(m as i64);
            let phi: Vec<Rat> = p.t.iter().map(|t| t.div_int(m as i64)).collect();
            let lifts = (m as usize).pow((n - 1) as u32);
            for code in 0..lifts {
                let mut code = code;
                let mut zeta = z1.clone();
                let mut pairs = vec![ArcPair::new(zeta.clone(), Rat::zero())];
                for g in &phi[..n - 1] {
                    let lift = (code % m as usize) as i64;
                    code /= m as usize;
                    zeta = &zeta + g + c.mul_int(lift);
                    pairs.push(ArcPair::new(zeta.clone(), Rat::zero()));
                }
                out.push(
                    ArcSystem::new(m, pairs, phi.clone(), Variant::UCc)
                        .expect("lattice configuration"),
                );
            }
        }
    }
    out
}

/// Count classes of `(p, g)` under `(p, g) ~ (τp, g·υ⁻¹)` on the lattice and
/// check that `(p, g) ↦ g·λ(p)` is a well defined bijection onto the lattice
/// configurations.
pub fn check_lambda_lattice(m: u32, q: usize, den: i64) -> LatticeCount {
    let n = q + 1;
    let group = WreathGroup::cyclic(n, m);
    let elems = group.elements();
    let u_inv = upsilon(m, n).inverse();
    let points = lattice_points(m, q, den);
    let mut violations = Vec::new();
    let mut visited: HashSet<(CyclicPoint, WreathElem<_>)> = HashSet::new();
    let mut images: HashSet<ArcSystem> = HashSet::new();
    let mut classes = 0usize;
    let lambdas: HashMap<CyclicPoint, Option<ArcSystem>> = points
        .iter()
        .map(|p| (p.clone(), lambda_to_ucc(p).ok()))
        .collect();
    let lam = |p: &CyclicPoint| {
        lambdas
            .get(p)
            .cloned()
            .flatten()
            .or_else(|| lambda_to_ucc(p).ok())
    };
    for p in &points {
        for g in &elems {
            if visited.contains(&(p.clone(), g.clone())) {
                continue;
            }
            classes += 1;
            let image = lam(p).and_then(|x| wreath_act(g, &x).ok());
            let Some(image) = image else {
                violations.push(Violation::new(
                    "map defined",
                    format!("{p:?} {g:?}"),
                    "a configuration",
                    "error",
                ));
                continue;
            };
            let (mut cp, mut cg) = (p.clone(), g.clone());
            for _ in 0..m as usize * n {
                visited.insert((cp.clone(), cg.clone()));
                cp = act_gen(Gen::Twist, &cp).expect("twist acts in every degree");
                cg = cg.compose(&u_inv).expect("same group");
                let other = lam(&cp).and_then(|x| wreath_act(&cg, &x).ok());
                if other.as_ref() != Some(&image) {
                    violations.push(Violation::new(
                        "constant on classes",
                        format!("{p:?} {g:?}"),
                        &image,
                        other,
                    ));
                    break;
                }
            }
            if (cp.clone(), cg.clone()) != (p.clone(), g.clone()) {
                violations.push(Violation::new(
                    "class closes",
                    format!("{p:?} {g:?}"),
                    "cycle",
                    "open",
                ));
            }
            if !images.insert(image.clone()) {
                violations.push(Violation::new(
                    "injective",
                    format!("{p:?} {g:?}"),
                    "new image",
                    image,
                ));
            }
        }
    }
    let targets: HashSet<ArcSystem> = lattice_configurations(m, n, den).into_iter().collect();
    if images != targets {
        let missing = targets.difference(&images).count();
        let extra = images.difference(&targets).count();
        violations.push(Violation::new(
            "surjective",
            format!("m={m} q={q} den={den}"),
            "equal image sets",
            format!("{missing} missing, {extra} extra"),
        ));
    }
    LatticeCount {
        m,
        q,
        den,
        left_classes: classes,
        right_points: targets.len(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    fn nf(text: &str, m: u32, q: Option<usize>) -> String {
        normalize_word(&CyclicWord::parse(text, m, q).unwrap())
            .unwrap()
            .to_string()
    }

    #[test]
    fn parse_and_display() {
        let w = CyclicWord::parse("d0.t1", 2, None).unwrap();
        assert_eq!(w.source, 1);
        assert_eq!(w.to_string(), "d0.t1");
        let w = CyclicWord::parse("t2^2.s1", 2, None).unwrap();
        assert_eq!(w.source, 1);
        assert_eq!(w.gens.len(), 3);
        assert!(CyclicWord::parse("d0.d0", 1, None).is_err());
        assert!(CyclicWord::parse("d5", 1, Some(2)).is_err());
        assert!(CyclicWord::parse("x1", 1, Some(2)).is_err());
        assert!(CyclicWord::parse("t1", 1, Some(2)).is_err());
    }

    #[test]
    fn named_normal_forms() {
        for m in 1..=3u32 {
            for q in 0..=3usize {
                let period = m as usize * (q + 1);
                let w = twist_word(m, q, period);
                assert!(normalize_word(&w).unwrap().is_identity());
                if q >= 1 {
                    assert_eq!(nf(&format!("d0.t{q}"), m, None), format!("d{q}"));
                }
            }
        }
        assert_eq!(nf("s0.t1", 2, None), "t2^2.s1");
        assert_eq!(nf("d1.s1", 1, Some(2)), "id");
        assert_eq!(nf("d0.d0", 1, Some(3)), "d0.d1");
    }

    #[test]
    fn twist_examples() {
        let p = CyclicPoint::new(1, r(1, 3), vec![Rat::one()]).unwrap();
        let tp = act_gen(Gen::Twist, &p).unwrap();
        assert_eq!(tp.r, r(1, 3));
        let p2 = CyclicPoint::new(3, r(1, 3), vec![Rat::one()]).unwrap();
        assert_eq!(act_gen(Gen::Twist, &p2).unwrap().r, r(7, 3));
        let p = CyclicPoint::new(1, r(1, 5), vec![r(1, 3), r(2, 3)]).unwrap();
        let w = twist_word(1, 1, 2);
        assert_eq!(act_on_point(&w, &p).unwrap(), p);
        assert_eq!(act_on_point(&CyclicWord::identity(1, 1), &p).unwrap(), p);
    }

    #[test]
    fn circle_action_examples() {
        let p = CyclicPoint::new(2, r(1, 2), vec![r(1, 2), r(1, 2)]).unwrap();
        assert_eq!(circle_act_point(&Rat::zero(), &p), p);
        assert_eq!(circle_act_point(&r(1, 2), &p).r, r(3, 2));
        assert_eq!(circle_act_point(&Rat::one(), &p), p);
    }

    #[test]
    fn lambda_example() {
        let p = CyclicPoint::new(1, r(1, 4), vec![Rat::one()]).unwrap();
        let x = lambda_to_ucc(&p).unwrap();
        assert_eq!(x.pairs, vec![ArcPair::new(r(1, 4), Rat::zero())]);
        assert_eq!(x.phi, vec![Rat::one()]);
        assert_eq!(ucc_to_lambda(&x).unwrap(), p);
    }

    #[test]
    fn rewriting_is_confluent() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let v = check_confluence(&mut rng, 3, 3, 3, 12, 300);
        assert!(v.is_empty(), "{}", v[0]);
    }

    #[test]
    fn normal_forms_act_like_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let v = check_word_actions(&mut rng, 400, 3, 4, 10);
        assert!(v.is_empty(), "{}", v[0]);
    }

    #[test]
    fn action_is_faithful_on_small_words() {
        for m in 1..=3 {
            for q in 0..=3 {
                let v = check_faithfulness(m, q, 2);
                assert!(v.is_empty(), "m={m} q={q}: {}", v[0]);
            }
        }
    }

    #[test]
    fn lambda_iso_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let v = check_lambda_iso(&mut rng, 300, 3, 4);
        assert!(v.is_empty(), "{}", v[0]);
    }

    #[test]
    fn small_lattice_bijection() {
        let c = check_lambda_lattice(2, 1, 2);
        assert!(c.violations.is_empty(), "{}", c.violations[0]);
        assert_eq!(c.left_classes, c.right_points);
        // m·den base points, den+1 gap splits, m lifts
        assert_eq!(c.right_points, 2 * 2 * 3 * 2);
    }
}
