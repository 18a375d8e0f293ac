//! Configurations of arcs on the quotient circle `S¹/C_m`.
//!
//! A point stores centers `ζ_j` on `S¹` (in turns, reduced mod 1), radii
//! `r_j ∈ [0, 1/(2m)]` and, for the ordered variants, the counter-clockwise
//! gaps `φ_j ∈ [0, 1/m]` from `[ζ_j]` to `[ζ_{j+1}]`, which sum to `1/m`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{EmbedError, GroupError};
use crate::exact::{ArcInterval, Rat, Turn};
use crate::groups::{CyclicElem, Perm, WreathElem};
use crate::operads::{compact_pairs_valid, compose_unordered, sample_compact_pairs, DiskPair};
use crate::report::{expect_eq, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Unordered tuples of disjoint arcs with positive radii.
    E,
    /// Strictly counter-clockwise ordered disjoint arcs; gaps not stored.
    #[serde(rename = "uE")]
    UE,
    /// As `uE` with the gaps stored.
    #[serde(rename = "uEprime")]
    UEPrime,
    /// The compactification: radii may vanish and arcs of radius zero may
    /// coincide.
    #[serde(rename = "uEc")]
    UEc,
    /// `uEc` with every radius zero.
    #[serde(rename = "uCc")]
    UCc,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::E => "E",
            Variant::UE => "uE",
            Variant::UEPrime => "uEprime",
            Variant::UEc => "uEc",
            Variant::UCc => "uCc",
        }
    }

    fn has_gaps(self) -> bool {
        matches!(self, Variant::UEPrime | Variant::UEc | Variant::UCc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArcPair {
    pub zeta: Rat,
    pub r: Rat,
}

impl ArcPair {
    pub fn new(zeta: Rat, r: Rat) -> ArcPair {
        ArcPair {
            zeta: zeta.rem_euclid(&Rat::one()),
            r,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArcSystem {
    pub m: u32,
    pub pairs: Vec<ArcPair>,
    #[serde(default)]
    pub phi: Vec<Rat>,
    pub variant: Variant,
}

impl fmt::Debug for ArcSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(m={}; ", self.variant.label(), self.m)?;
        for p in &self.pairs {
            write!(f, "({}, {})", p.zeta, p.r)?;
        }
        write!(f, "; φ={:?})", self.phi)
    }
}

fn embed_invariant(variant: Variant, detail: impl Into<String>) -> EmbedError {
    EmbedError::Invariant {
        variant: variant.label(),
        detail: detail.into(),
    }
}

impl ArcSystem {
    /// Build and validate, reducing every center mod 1.
    pub fn new(
        m: u32,
        pairs: Vec<ArcPair>,
        phi: Vec<Rat>,
        variant: Variant,
    ) -> Result<ArcSystem, EmbedError> {
        let x = ArcSystem {
            m,
            pairs: pairs
                .into_iter()
                .map(|p| ArcPair::new(p.zeta, p.r))
                .collect(),
            phi,
            variant,
        };
        x.validate()?;
        Ok(x)
    }

    /// The single point of arity zero.
    pub fn empty(m: u32) -> ArcSystem {
        ArcSystem {
            m,
            pairs: Vec::new(),
            phi: Vec::new(),
            variant: Variant::UEc,
        }
    }

    /// Parse JSON, reduce centers and validate.
    pub fn from_json(v: &serde_json::Value) -> Result<ArcSystem, EmbedError> {
        let x: ArcSystem = serde_json::from_value(v.clone())
            .map_err(|e| embed_invariant(Variant::UEc, format!("schema: {e}")))?;
        ArcSystem::new(x.m, x.pairs, x.phi, x.variant)
    }

    pub fn arity(&self) -> usize {
        self.pairs.len()
    }

    pub fn circumference(&self) -> Rat {
        Rat::new(1, self.m as i64)
    }

    /// `[ζ_j]` as a point of `S¹/C_m`.
    pub fn point(&self, j: usize) -> Turn {
        Turn::on_quotient(self.pairs[j].zeta.clone(), self.m)
    }

    pub fn arc(&self, j: usize) -> ArcInterval {
        ArcInterval {
            center: self.point(j),
            half_width: self.pairs[j].r.clone(),
        }
    }

    pub fn gap_sum(&self) -> Rat {
        Rat::sum(&self.phi)
    }

    pub fn all_radii_zero(&self) -> bool {
        self.pairs.iter().all(|p| p.r.is_zero())
    }

    pub fn with_variant(&self, variant: Variant) -> Result<ArcSystem, EmbedError> {
        let mut x = self.clone();
        x.variant = variant;
        if !variant.has_gaps() {
            x.phi.clear();
        }
        x.validate()?;
        Ok(x)
    }

    /// Check every invariant of the declared variant.
    pub fn validate(&self) -> Result<(), EmbedError> {
        let v = self.variant;
        if self.m == 0 {
            return Err(embed_invariant(v, "m must be positive"));
        }
        let one = Rat::one();
        let half = Rat::new(1, 2 * self.m as i64);
        for (j, p) in self.pairs.iter().enumerate() {
            if p.zeta.is_negative() || p.zeta >= one {
                return Err(embed_invariant(
                    v,
                    format!("center {} not reduced mod 1", j + 1),
                ));
            }
            if p.r.is_negative() || p.r > half {
                return Err(embed_invariant(
                    v,
                    format!("radius {} of arc {} not in [0, {half}]", p.r, j + 1),
                ));
            }
            let needs_positive = matches!(v, Variant::E | Variant::UE | Variant::UEPrime);
            if needs_positive && p.r.is_zero() {
                return Err(embed_invariant(
                    v,
                    format!("radius of arc {} must be positive", j + 1),
                ));
            }
            if v == Variant::UCc && !p.r.is_zero() {
                return Err(embed_invariant(
                    v,
                    format!("radius of arc {} must be zero", j + 1),
                ));
            }
        }
        let n = self.arity();
        match v {
            Variant::E => {
                self.no_phi()?;
                self.check_meeting()
            }
            Variant::UE => {
                self.no_phi()?;
                self.check_strict_order()?;
                self.check_meeting()
            }
            Variant::UEPrime => {
                self.check_strict_order()?;
                self.check_meeting()?;
                let expected = self.strict_gaps()?;
                if self.phi != expected {
                    return Err(embed_invariant(v, "stored gaps differ from the arc gaps"));
                }
                Ok(())
            }
            Variant::UEc | Variant::UCc => {
                if n == 0 {
                    return self.no_phi();
                }
                self.check_gaps()?;
                self.check_meeting()
            }
        }
    }

    fn no_phi(&self) -> Result<(), EmbedError> {
        if !self.phi.is_empty() {
            return Err(embed_invariant(self.variant, "this variant stores no gaps"));
        }
        Ok(())
    }

    fn check_gaps(&self) -> Result<(), EmbedError> {
        let v = self.variant;
        let n = self.arity();
        if self.phi.len() != n {
            return Err(embed_invariant(
                v,
                format!("{} gaps for {} arcs", self.phi.len(), n),
            ));
        }
        let c = self.circumference();
        for (j, g) in self.phi.iter().enumerate() {
            if g.is_negative() || g > &c {
                return Err(embed_invariant(
                    v,
                    format!("gap {} = {g} not in [0, {c}]", j + 1),
                ));
            }
        }
        let total = self.gap_sum();
        if total != c {
            return Err(embed_invariant(
                v,
                format!("gap-sum invariant violated: gaps sum to {total}, expected {c}"),
            ));
        }
        for j in 0..n {
            let next = &self.pairs[(j + 1) % n].zeta;
            let drift = (next - &self.pairs[j].zeta - &self.phi[j]).rem_euclid(&c);
            if !drift.is_zero() {
                return Err(embed_invariant(
                    v,
                    format!(
                        "center {} is not center {} advanced by gap {}",
                        (j + 1) % n + 1,
                        j + 1,
                        j + 1
                    ),
                ));
            }
        }
        Ok(())
    }

    /// Counter-clockwise gaps between consecutive classes, requiring them to
    /// wind once around `S¹/C_m` without repeating a point.
    fn strict_gaps(&self) -> Result<Vec<Rat>, EmbedError> {
        let n = self.arity();
        if n == 1 {
            return Ok(vec![self.circumference()]);
        }
        let mut gaps = Vec::with_capacity(n);
        for j in 0..n {
            let k = (j + 1) % n;
            let g = self.point(j).ccw_gap(&self.point(k))?;
            if g.is_zero() {
                return Err(EmbedError::Coincident(j, k));
            }
            gaps.push(g);
        }
        Ok(gaps)
    }

    fn check_strict_order(&self) -> Result<(), EmbedError> {
        let gaps = self.strict_gaps()?;
        if self.arity() > 0 && Rat::sum(&gaps) != self.circumference() {
            return Err(embed_invariant(
                self.variant,
                "centers are not in counter-clockwise order",
            ));
        }
        Ok(())
    }

    /// Arcs may only meet when both have radius zero.
    fn check_meeting(&self) -> Result<(), EmbedError> {
        let n = self.arity();
        for j in 0..n {
            for k in j + 1..n {
                let (a, b) = (&self.pairs[j].r, &self.pairs[k].r);
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let d = self.point(j).circular_distance(&self.point(k))?;
                if d < a + b {
                    return Err(embed_invariant(
                        self.variant,
                        format!("arcs {} and {} overlap", j + 1, k + 1),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Fill in the counter-clockwise gaps of a `uE` point.
pub fn arc_coords(x: &ArcSystem) -> Result<ArcSystem, EmbedError> {
    if x.variant != Variant::UE {
        return Err(EmbedError::WrongVariant {
            expected: "uE",
            got: x.variant.label(),
        });
    }
    x.validate()?;
    let phi = x.strict_gaps()?;
    ArcSystem::new(x.m, x.pairs.clone(), phi, Variant::UEPrime)
}

/// Drop the stored gaps of a `uE′` point.
pub fn forget_coords(x: &ArcSystem) -> Result<ArcSystem, EmbedError> {
    x.with_variant(Variant::UE)
}

fn require_gapped(x: &ArcSystem) -> Result<(), EmbedError> {
    if !matches!(x.variant, Variant::UEc | Variant::UCc) {
        return Err(EmbedError::WrongVariant {
            expected: "uEc",
            got: x.variant.label(),
        });
    }
    Ok(())
}

/// Substitute inner configurations into the arcs of `outer`.
///
/// Inner `i` is a sorted tuple of pairs `(v, s)` in `[-1, 1]`; its entries
/// become arcs centered at `ζ_i + r_i·v` with radius `r_i·s`, and the gaps
/// between consecutive new arcs are read off the outer gaps.
pub fn compose_uec(outer: &ArcSystem, inners: &[Vec<DiskPair>]) -> Result<ArcSystem, EmbedError> {
    require_gapped(outer)?;
    outer.validate()?;
    let n = outer.arity();
    if inners.len() != n {
        return Err(EmbedError::ArityMismatch {
            expected: n,
            got: inners.len(),
        });
    }
    for g in inners {
        compact_pairs_valid(g).map_err(|d| embed_invariant(Variant::UEc, format!("inner: {d}")))?;
    }
    let j: usize = inners.iter().map(Vec::len).sum();
    if j == 0 {
        return Ok(ArcSystem::empty(outer.m));
    }
    let nonempty: Vec<usize> = (0..n).filter(|&i| !inners[i].is_empty()).collect();
    let mut pairs = Vec::with_capacity(j);
    let mut psi = Vec::with_capacity(j);
    for (pos, &i) in nonempty.iter().enumerate() {
        let (zeta, r) = (&outer.pairs[i].zeta, &outer.pairs[i].r);
        let block = &inners[i];
        for (k, g) in block.iter().enumerate() {
            pairs.push(ArcPair::new(zeta + &(r * &g.center), r * &g.radius));
            if k + 1 < block.len() {
                psi.push(r * &(&block[k + 1].center - &g.center));
            } else {
                let next = nonempty[(pos + 1) % nonempty.len()];
                // gaps φ_i, φ_{i+1}, .., φ_{next-1} cyclically; all of them
                // when `next == i`
                let mut between = Rat::zero();
                let mut t = i;
                loop {
                    between += &outer.phi[t];
                    t = (t + 1) % n;
                    if t == next {
                        break;
                    }
                }
                let first = &inners[next][0].center;
                let r_next = &outer.pairs[next].r;
                psi.push(between - r * &g.center + r_next * first);
            }
        }
    }
    let variant = if outer.variant == Variant::UCc {
        Variant::UCc
    } else {
        Variant::UEc
    };
    ArcSystem::new(outer.m, pairs, psi, variant)
}

/// Left action of `Z_n ≀ C_m` (or `Σ_n ≀ C_m` on the unordered variant):
/// coordinate `i` is rotated by `h_i` (the generator adds `1/m`) and then
/// moved to slot `σ(i)`, carrying its gap along.
pub fn wreath_act(g: &WreathElem<CyclicElem>, x: &ArcSystem) -> Result<ArcSystem, EmbedError> {
    if g.degree() != x.arity() {
        return Err(EmbedError::ArityMismatch {
            expected: x.arity(),
            got: g.degree(),
        });
    }
    if g.members.iter().any(|h| h.order() != x.m) {
        return Err(GroupError::BaseMismatch(format!("expected C{}", x.m)).into());
    }
    if x.variant != Variant::E && g.perm.cyclic_exponent().is_none() {
        return Err(GroupError::NotCyclic.into());
    }
    let c = x.circumference();
    let rotate =
        |h: &CyclicElem, p: &ArcPair| ArcPair::new(&p.zeta + &c.mul_int(h.exp_i64()), p.r.clone());
    let pairs = g.act_on_slice(&x.pairs, rotate);
    let phi = if x.phi.is_empty() {
        Vec::new()
    } else {
        g.perm.permute_left(&x.phi)
    };
    ArcSystem::new(x.m, pairs, phi, x.variant)
}

/// Rotate every center by `theta` turns.
pub fn circle_act(theta: &Rat, x: &ArcSystem) -> ArcSystem {
    ArcSystem {
        m: x.m,
        pairs: x
            .pairs
            .iter()
            .map(|p| ArcPair::new(&p.zeta + theta, p.r.clone()))
            .collect(),
        phi: x.phi.clone(),
        variant: x.variant,
    }
}

/// One step of the averaging retraction on configurations of points:
/// `ζ_j ↦ ζ_j + φ_j/2` and `φ_j ↦ (φ_j + φ_{j+1})/2`.
pub fn retract_step(x: &ArcSystem) -> Result<ArcSystem, EmbedError> {
    require_gapped(x)?;
    if !x.all_radii_zero() {
        return Err(embed_invariant(
            x.variant,
            "retraction needs every radius zero",
        ));
    }
    let n = x.arity();
    let pairs = x
        .pairs
        .iter()
        .zip(&x.phi)
        .map(|(p, g)| ArcPair::new(&p.zeta + &g.div_int(2), Rat::zero()))
        .collect();
    let phi = (0..n)
        .map(|j| (&x.phi[j] + &x.phi[(j + 1) % n]).div_int(2))
        .collect();
    ArcSystem::new(x.m, pairs, phi, x.variant)
}

/// A point of `uE^c(n) ×_{Z_n} Σ_n`: the ordered tuple `x_i = base_{perm(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemWithPerm {
    pub base: ArcSystem,
    pub perm: Perm,
}

impl SystemWithPerm {
    pub fn new(base: ArcSystem, perm: Perm) -> Result<SystemWithPerm, EmbedError> {
        if base.arity() != perm.degree() {
            return Err(EmbedError::ArityMismatch {
                expected: base.arity(),
                got: perm.degree(),
            });
        }
        base.validate()?;
        Ok(SystemWithPerm { base, perm })
    }

    /// Choose the representative of the `Z_n` coset with `perm(1) = 1`.
    pub fn normalize(&self) -> Result<SystemWithPerm, EmbedError> {
        let n = self.base.arity();
        if n == 0 {
            return Ok(self.clone());
        }
        let shift = self.perm.apply(0);
        let back = Perm::long_cycle(n).pow(-(shift as i64));
        let rot = WreathElem::new(back.clone(), vec![CyclicElem::identity(self.base.m); n])?;
        let base = wreath_act(&rot, &self.base)?;
        let perm = back.compose(&self.perm)?;
        Ok(SystemWithPerm { base, perm })
    }

    /// The ordered configuration in `E(n)`.
    pub fn to_configuration(&self) -> Result<ArcSystem, EmbedError> {
        let pairs = self.perm.permute_right(&self.base.pairs);
        ArcSystem::new(self.base.m, pairs, Vec::new(), Variant::E)
    }

    /// Sort a configuration counter-clockwise starting from its first arc.
    pub fn from_configuration(x: &ArcSystem) -> Result<SystemWithPerm, EmbedError> {
        if x.variant != Variant::E {
            return Err(EmbedError::WrongVariant {
                expected: "E",
                got: x.variant.label(),
            });
        }
        x.validate()?;
        let n = x.arity();
        if n == 0 {
            let base = ArcSystem::new(x.m, Vec::new(), Vec::new(), Variant::UE)?;
            return Ok(SystemWithPerm {
                base,
                perm: Perm::identity(0),
            });
        }
        let start = x.point(0);
        let mut keyed = Vec::with_capacity(n);
        for i in 0..n {
            keyed.push((start.ccw_gap(&x.point(i))?, i));
        }
        keyed.sort();
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(EmbedError::Coincident(w[0].1, w[1].1));
            }
        }
        let order: Vec<usize> = keyed.iter().map(|&(_, i)| i).collect();
        let pairs = order.iter().map(|&i| x.pairs[i].clone()).collect();
        let base = arc_coords(&ArcSystem::new(x.m, pairs, Vec::new(), Variant::UE)?)?;
        let perm = Perm::from_images(order)?.inverse();
        Ok(SystemWithPerm { base, perm })
    }
}

/// Sample a `uE^c(n)` point on the lattice of gaps `k/(m·den)`. Radii are
/// positive only when both neighbouring gaps are, and a fraction of the
/// samples have all radii zero.
pub fn sample_uec<R: Rng + ?Sized>(rng: &mut R, m: u32, n: usize, den: i64) -> ArcSystem {
    if n == 0 {
        return ArcSystem::empty(m);
    }
    let unit = Rat::new(1, m as i64 * den);
    let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=den)).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(den);
    let phi: Vec<Rat> = cuts.windows(2).map(|w| unit.mul_int(w[1] - w[0])).collect();
    let c = Rat::new(1, m as i64);
    let points = rng.gen_bool(0.25);
    let mut zeta = unit.mul_int(rng.gen_range(0..m as i64 * den)).div_int(2);
    let mut pairs = Vec::with_capacity(n);
    for j in 0..n {
        let before = &phi[(j + n - 1) % n];
        let room = Rat::min(before, &phi[j]).div_int(2);
        let r = if points || room.is_zero() || rng.gen_bool(0.2) {
            Rat::zero()
        } else {
            room.mul_int(rng.gen_range(1..=4)).div_int(4)
        };
        pairs.push(ArcPair::new(zeta.clone(), r));
        zeta = &zeta + &phi[j] + c.mul_int(rng.gen_range(0..m as i64));
    }
    let variant = if points { Variant::UCc } else { Variant::UEc };
    let variant = if variant == Variant::UEc && pairs.iter().all(|p| p.r.is_zero()) {
        Variant::UCc
    } else {
        variant
    };
    ArcSystem::new(m, pairs, phi, variant).expect("sampler produces valid points")
}

/// Sample a `uE` point: positive gaps and radii.
pub fn sample_ue<R: Rng + ?Sized>(rng: &mut R, m: u32, n: usize, den: i64) -> ArcSystem {
    let unit = Rat::new(1, m as i64 * den.max(n as i64));
    let total = den.max(n as i64);
    let mut cuts: Vec<i64> =
        rand::seq::index::sample(rng, (total - 1) as usize, n.saturating_sub(1))
            .into_iter()
            .map(|k| k as i64 + 1)
            .collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(total);
    let phi: Vec<Rat> = cuts.windows(2).map(|w| unit.mul_int(w[1] - w[0])).collect();
    let c = Rat::new(1, m as i64);
    let mut zeta = unit.mul_int(rng.gen_range(0..m as i64 * total)).div_int(2);
    let mut pairs = Vec::with_capacity(n);
    for j in 0..n {
        let before = &phi[(j + n - 1) % n];
        let room = Rat::min(before, &phi[j]).div_int(2);
        pairs.push(ArcPair::new(
            zeta.clone(),
            room.mul_int(rng.gen_range(1..=3)).div_int(3),
        ));
        zeta = &zeta + &phi[j] + c.mul_int(rng.gen_range(0..m as i64));
    }
    ArcSystem::new(m, pairs, Vec::new(), Variant::UE).expect("sampler produces valid points")
}

fn random_wreath<R: Rng + ?Sized>(rng: &mut R, n: usize, m: u32) -> WreathElem<CyclicElem> {
    let perm = Perm::long_cycle(n).pow(rng.gen_range(0..n.max(1)) as i64);
    let members = (0..n)
        .map(|_| CyclicElem::new(m, rng.gen_range(0..m) as i64))
        .collect();
    WreathElem { perm, members }
}

/// `(α; h)` spread over blocks: block `i` moves to slot `α(i)` and every
/// entry of it is rotated by `h_i`.
pub fn block_wreath(
    g: &WreathElem<CyclicElem>,
    sizes: &[usize],
) -> Result<WreathElem<CyclicElem>, GroupError> {
    let perm = crate::groups::block_cycle_perm(sizes, &g.perm)?;
    let members = sizes
        .iter()
        .zip(&g.members)
        .flat_map(|(&s, h)| std::iter::repeat_n(*h, s))
        .collect();
    Ok(WreathElem { perm, members })
}

fn show(x: &impl fmt::Debug) -> String {
    format!("{x:?}")
}

/// Randomized checks of the composition: unit, associativity against the
/// non-symmetric compactified operad, compatibility with `Z_n ≀ C_m` and with
/// rotations, and gap-sum conservation.
pub fn check_compose_laws<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    n_max: usize,
    m_max: u32,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for _ in 0..trials {
        let m = rng.gen_range(1..=m_max);
        let n = rng.gen_range(0..=n_max);
        let x = sample_uec(rng, m, n, 4);
        let gs: Vec<Vec<DiskPair>> = (0..n)
            .map(|_| {
                let j = rng.gen_range(0..=n_max);
                sample_compact_pairs(rng, j)
            })
            .collect();
        let hs: Vec<Vec<Vec<DiskPair>>> = gs
            .iter()
            .map(|g| {
                (0..g.len())
                    .map(|_| {
                        let k = rng.gen_range(0..=2);
                        sample_compact_pairs(rng, k)
                    })
                    .collect()
            })
            .collect();
        let witness = || format!("x={} g={} h={}", show(&x), show(&gs), show(&hs));

        let xg = compose_uec(&x, &gs);
        match &xg {
            Ok(y) if y.arity() > 0 && y.gap_sum() != y.circumference() => {
                out.push(Violation::new(
                    "gap sum",
                    witness(),
                    y.circumference(),
                    y.gap_sum(),
                ));
            }
            Err(e) => out.push(Violation::new(
                "composition defined",
                witness(),
                "a point",
                e,
            )),
            _ => {}
        }

        let unit = vec![vec![DiskPair::unit()]; n];
        expect_eq(
            &mut out,
            "unit",
            witness,
            Ok::<_, EmbedError>(x.clone()),
            compose_uec(&x, &unit),
        );

        let flat: Vec<Vec<DiskPair>> = hs.iter().flatten().cloned().collect();
        let lhs = xg.clone().and_then(|y| compose_uec(&y, &flat));
        let rhs = gs
            .iter()
            .zip(&hs)
            .map(|(g, h)| compose_unordered(g, h).map_err(EmbedError::from))
            .collect::<Result<Vec<_>, _>>()
            .and_then(|gh| compose_uec(&x, &gh));
        expect_eq(&mut out, "associativity", witness, lhs, rhs);

        let g = random_wreath(rng, n, m);
        let lhs = wreath_act(&g, &x).and_then(|gx| compose_uec(&gx, &gs));
        let moved: Vec<Vec<DiskPair>> = (0..n).map(|i| gs[g.perm.apply(i)].clone()).collect();
        let sizes: Vec<usize> = moved.iter().map(Vec::len).collect();
        let rhs = compose_uec(&x, &moved).and_then(|y| {
            let big = block_wreath(&g, &sizes)?;
            wreath_act(&big, &y)
        });
        expect_eq(
            &mut out,
            "block cycling",
            || format!("{} g={g:?}", witness()),
            lhs,
            rhs,
        );

        let theta = Rat::new(rng.gen_range(0..12), 12);
        let lhs = compose_uec(&circle_act(&theta, &x), &gs);
        let rhs = xg.map(|y| circle_act(&theta, &y));
        expect_eq(
            &mut out,
            "rotation",
            || format!("{} theta={theta}", witness()),
            lhs,
            rhs,
        );
    }
    out
}

/// Randomized checks of the actions: identity, `υ^{mn} = 1`, commutation of
/// rotations with the wreath action, coordinate round trips and the
/// normalization of ordered configurations.
pub fn check_action_laws<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    n_max: usize,
    m_max: u32,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for _ in 0..trials {
        let m = rng.gen_range(1..=m_max);
        let n = rng.gen_range(1..=n_max);
        let x = sample_uec(rng, m, n, 4);
        let g = random_wreath(rng, n, m);
        let theta = Rat::new(rng.gen_range(0..24), 24);
        let lhs = wreath_act(&g, &x).map(|y| circle_act(&theta, &y));
        let rhs = wreath_act(&g, &circle_act(&theta, &x));
        expect_eq(
            &mut out,
            "actions commute",
            || format!("x={x:?} g={g:?} theta={theta}"),
            lhs,
            rhs,
        );

        let u = crate::groups::upsilon(m, n);
        let mut y = Ok(x.clone());
        for _ in 0..(m as usize * n) {
            y = y.and_then(|z| wreath_act(&u, &z));
        }
        expect_eq(
            &mut out,
            "upsilon order",
            || show(&x),
            Ok::<_, EmbedError>(x.clone()),
            y,
        );

        let e = sample_ue(rng, m, n, 4);
        let back = arc_coords(&e).and_then(|p| forget_coords(&p));
        expect_eq(
            &mut out,
            "arc coordinates round trip",
            || show(&e),
            Ok::<_, EmbedError>(e.clone()),
            back,
        );
        if let Ok(p) = arc_coords(&e) {
            if p.gap_sum() != p.circumference() {
                out.push(Violation::new(
                    "arc coordinates gap sum",
                    show(&e),
                    p.circumference(),
                    p.gap_sum(),
                ));
            }
        }

        let sigma = Perm::random(rng, n);
        let config = e.with_variant(Variant::E).map(|c| ArcSystem {
            pairs: sigma.permute_right(&c.pairs),
            ..c
        });
        let back = config
            .clone()
            .and_then(|c| SystemWithPerm::from_configuration(&c))
            .and_then(|s| s.to_configuration());
        expect_eq(
            &mut out,
            "configuration round trip",
            || show(&config),
            config.clone(),
            back,
        );
        if let Ok(p) = arc_coords(&e) {
            let s = SystemWithPerm {
                base: p,
                perm: sigma.clone(),
            };
            let lhs = s.normalize();
            let rhs = s
                .to_configuration()
                .and_then(|c| SystemWithPerm::from_configuration(&c));
            expect_eq(&mut out, "coset normalization", || show(&s), lhs, rhs);
        }
    }
    out
}

/// A configuration of `n` points whose gaps include `zeros` zero gaps.
pub fn sample_degenerate<R: Rng + ?Sized>(
    rng: &mut R,
    m: u32,
    n: usize,
    zeros: usize,
    den: i64,
) -> ArcSystem {
    let zeros = zeros.min(n.saturating_sub(1));
    let positive = n - zeros;
    // a composition of den·positive into positive parts
    let total = den * positive as i64;
    let mut cuts: Vec<i64> = (1..total).collect();
    for k in 0..positive - 1 {
        let j = rng.gen_range(k..cuts.len());
        cuts.swap(k, j);
    }
    let mut chosen: Vec<i64> = cuts[..positive - 1].to_vec();
    chosen.sort_unstable();
    chosen.insert(0, 0);
    chosen.push(total);
    let mut gaps: Vec<Rat> = chosen
        .windows(2)
        .map(|w| Rat::new(w[1] - w[0], total * m as i64))
        .collect();
    gaps.extend(std::iter::repeat_n(Rat::zero(), zeros));
    for k in (1..n).rev() {
        gaps.swap(k, rng.gen_range(0..=k));
    }
    let c = Rat::new(1, m as i64);
    let mut zeta = Rat::new(rng.gen_range(0..den), den);
    let mut pairs = Vec::with_capacity(n);
    for g in &gaps {
        pairs.push(ArcPair::new(zeta.clone(), Rat::zero()));
        zeta = &zeta + g + c.mul_int(rng.gen_range(0..m as i64));
    }
    ArcSystem::new(m, pairs, gaps, Variant::UCc).expect("sampled gaps sum to 1/m")
}

/// Longest cyclic run of zero gaps.
pub fn longest_zero_run(x: &ArcSystem) -> usize {
    let n = x.phi.len();
    let mut best = 0;
    for start in 0..n {
        let run = (0..n)
            .take_while(|k| x.phi[(start + k) % n].is_zero())
            .count();
        best = best.max(run);
    }
    best
}

/// Degenerate configurations become nondegenerate after `n` retraction
/// steps, and already after as many steps as their longest zero run; every
/// step keeps the gap sum.
pub fn check_retraction<R: Rng + ?Sized>(
    rng: &mut R,
    trials: usize,
    n_max: usize,
    m_max: u32,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for _ in 0..trials {
        let m = rng.gen_range(1..=m_max);
        let n = rng.gen_range(1..=n_max);
        let zeros = rng.gen_range(0..n);
        let x = sample_degenerate(rng, m, n, zeros, 6);
        let run = longest_zero_run(&x);
        let mut y = x.clone();
        for step in 1..=n {
            match retract_step(&y) {
                Ok(z) => y = z,
                Err(e) => {
                    out.push(Violation::new(
                        "retraction defined",
                        show(&x),
                        "a configuration",
                        e,
                    ));
                    break;
                }
            }
            if y.gap_sum() != y.circumference() {
                out.push(Violation::new(
                    "retraction gap sum",
                    show(&x),
                    y.circumference(),
                    y.gap_sum(),
                ));
            }
            if step == run && y.phi.iter().any(|g| !g.is_positive()) {
                out.push(Violation::new(
                    "positive after longest zero run",
                    show(&x),
                    "positive gaps",
                    &y.phi,
                ));
            }
        }
        if y.phi.iter().any(|g| !g.is_positive()) {
            out.push(Violation::new(
                "positive after n steps",
                show(&x),
                "positive gaps",
                &y.phi,
            ));
        }
    }
    out
}

/// The fixed composition and retraction examples.
pub fn check_worked_examples() -> Vec<Violation> {
    let mut out = Vec::new();
    let r = Rat::new;
    let outer = ArcSystem::new(
        1,
        vec![
            ArcPair::new(r(0, 1), r(1, 8)),
            ArcPair::new(r(1, 2), r(1, 8)),
        ],
        vec![r(1, 2), r(1, 2)],
        Variant::UEc,
    );
    let inners = vec![
        vec![DiskPair::new(r(0, 1), r(1, 2))],
        vec![DiskPair::new(r(1, 2), r(1, 4))],
    ];
    let expected = ArcSystem::new(
        1,
        vec![
            ArcPair::new(r(0, 1), r(1, 16)),
            ArcPair::new(r(9, 16), r(1, 32)),
        ],
        vec![r(9, 16), r(7, 16)],
        Variant::UEc,
    );
    let got = outer.and_then(|x| compose_uec(&x, &inners));
    expect_eq(
        &mut out,
        "worked composition",
        || "m=1, n=2".to_string(),
        expected,
        got,
    );

    let x = ArcSystem::new(
        1,
        vec![
            ArcPair::new(r(0, 1), r(0, 1)),
            ArcPair::new(r(0, 1), r(0, 1)),
        ],
        vec![r(1, 1), r(0, 1)],
        Variant::UCc,
    );
    let got = x.and_then(|y| retract_step(&y)).map(|y| y.phi);
    expect_eq(
        &mut out,
        "worked retraction",
        || "phi=(1,0)".to_string(),
        Ok::<_, EmbedError>(vec![r(1, 2), r(1, 2)]),
        got,
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    fn ap(z: Rat, rad: Rat) -> ArcPair {
        ArcPair::new(z, rad)
    }

    fn worked_outer() -> ArcSystem {
        ArcSystem::new(
            1,
            vec![ap(r(0, 1), r(1, 8)), ap(r(1, 2), r(1, 8))],
            vec![r(1, 2), r(1, 2)],
            Variant::UEc,
        )
        .unwrap()
    }

    #[test]
    fn worked_composition() {
        let g1 = vec![DiskPair::new(r(0, 1), r(1, 2))];
        let g2 = vec![DiskPair::new(r(1, 2), r(1, 4))];
        let y = compose_uec(&worked_outer(), &[g1, g2]).unwrap();
        let zetas: Vec<Rat> = y.pairs.iter().map(|p| p.zeta.clone()).collect();
        let radii: Vec<Rat> = y.pairs.iter().map(|p| p.r.clone()).collect();
        assert_eq!(zetas, vec![r(0, 1), r(9, 16)]);
        assert_eq!(radii, vec![r(1, 16), r(1, 32)]);
        assert_eq!(y.phi, vec![r(9, 16), r(7, 16)]);
    }

    #[test]
    fn collapsing_inners_give_points() {
        let x = worked_outer();
        let g = vec![
            vec![DiskPair::new(r(1, 2), r(0, 1))],
            vec![DiskPair::new(r(-1, 1), r(0, 1))],
        ];
        let y = compose_uec(&x, &g).unwrap();
        assert!(y.all_radii_zero());
        assert_eq!(y.pairs[0].zeta, r(1, 16));
        assert_eq!(y.pairs[1].zeta, r(3, 8));
        assert!(y.with_variant(Variant::UCc).is_ok());
    }

    #[test]
    fn all_empty_inners_give_the_empty_point() {
        let y = compose_uec(&worked_outer(), &[vec![], vec![]]).unwrap();
        assert_eq!(y, ArcSystem::empty(1));
    }

    #[test]
    fn gap_sum_violation_is_named() {
        let bad = ArcSystem::new(
            1,
            vec![ap(r(0, 1), r(0, 1)), ap(r(1, 2), r(0, 1))],
            vec![r(1, 2), r(1, 4)],
            Variant::UEc,
        );
        let msg = bad.unwrap_err().to_string();
        assert!(msg.contains("gap-sum"), "{msg}");
    }

    #[test]
    fn arc_coords_examples() {
        let x = ArcSystem::new(
            1,
            vec![ap(r(0, 1), r(1, 8)), ap(r(1, 2), r(1, 8))],
            vec![],
            Variant::UE,
        )
        .unwrap();
        assert_eq!(arc_coords(&x).unwrap().phi, vec![r(1, 2), r(1, 2)]);
        let one = ArcSystem::new(3, vec![ap(r(1, 7), r(1, 10))], vec![], Variant::UE).unwrap();
        assert_eq!(arc_coords(&one).unwrap().phi, vec![r(1, 3)]);
    }

    #[test]
    fn rotation_by_generator() {
        let x = ArcSystem::new(2, vec![ap(r(1, 8), r(0, 1))], vec![r(1, 2)], Variant::UCc).unwrap();
        let g = WreathElem::new(Perm::identity(1), vec![CyclicElem::generator(2)]).unwrap();
        assert_eq!(wreath_act(&g, &x).unwrap().pairs[0].zeta, r(5, 8));
        assert_eq!(circle_act(&Rat::one(), &x), x);
        assert_eq!(circle_act(&Rat::zero(), &x), x);
    }

    #[test]
    fn retraction_examples() {
        let x = ArcSystem::new(
            1,
            vec![ap(r(0, 1), r(0, 1)), ap(r(0, 1), r(0, 1))],
            vec![r(1, 1), r(0, 1)],
            Variant::UCc,
        )
        .unwrap();
        let y = retract_step(&x).unwrap();
        assert_eq!(y.phi, vec![r(1, 2), r(1, 2)]);
        let eq = ArcSystem::new(
            1,
            vec![ap(r(0, 1), r(0, 1)), ap(r(1, 2), r(0, 1))],
            vec![r(1, 2), r(1, 2)],
            Variant::UCc,
        )
        .unwrap();
        let z = retract_step(&eq).unwrap();
        assert_eq!(z.phi, eq.phi);
        assert_eq!(z.pairs[0].zeta, r(1, 4));
        assert_eq!(z.pairs[1].zeta, r(3, 4));
    }

    #[test]
    fn retraction_separates_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let m = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=6);
            let mut x = sample_uec(&mut rng, m, n, 3);
            x.pairs.iter_mut().for_each(|p| p.r = Rat::zero());
            x.variant = Variant::UCc;
            for _ in 0..n {
                x = retract_step(&x).unwrap();
            }
            assert!(x.phi.iter().all(Rat::is_positive), "{x:?}");
        }
    }

    #[test]
    fn composition_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let v = check_compose_laws(&mut rng, 300, 3, 3);
        assert!(v.is_empty(), "{}", v[0]);
    }

    #[test]
    fn action_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let v = check_action_laws(&mut rng, 300, 4, 3);
        assert!(v.is_empty(), "{}", v[0]);
    }

    #[test]
    fn json_shape() {
        let js = serde_json::to_value(worked_outer()).unwrap();
        assert_eq!(
            js,
            serde_json::json!({"m": 1, "pairs": [{"zeta": "0", "r": "1/8"}, {"zeta": "1/2", "r": "1/8"}],
                "phi": ["1/2", "1/2"], "variant": "uEc"})
        );
        assert_eq!(ArcSystem::from_json(&js).unwrap(), worked_outer());
    }

    #[test]
    fn worked_examples_hold() {
        assert!(check_worked_examples().is_empty());
    }

    #[test]
    fn retraction_clears_zero_gaps() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let v = check_retraction(&mut rng, 300, 5, 3);
        assert!(v.is_empty(), "{}", v[0]);
    }
}
