//! Exact rational scalars and turn-based circle arithmetic.
//!
//! Every angle in this crate is measured in turns (one turn is a full
//! revolution), so rotations by `1/m` of the circle are exact rationals and
//! no floating point value ever enters a computation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ExactError;

/// An arbitrary precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Rat {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Rat, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rat, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &other.0))
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Least non-negative representative of `self` modulo a positive `modulus`.
    pub fn rem_euclid(&self, modulus: &Rat) -> Rat {
        assert!(modulus.is_positive(), "modulus must be positive");
        if !self.0.is_negative() && self.0 < modulus.0 {
            return self.clone();
        }
        if modulus.0.is_integer() {
            let (num, den) = (self.0.numer(), self.0.denom());
            let md = modulus.0.numer() * den;
            let r = num.mod_floor(&md);
            if r.is_zero() {
                return Rat(BigRational::zero());
            }
            return Rat(BigRational::new_raw(r, den.clone()));
        }
        let q = (&self.0 / &modulus.0).floor();
        Rat(&self.0 - q * &modulus.0)
    }

    /// Integer quotient `floor(self / modulus)`.
    pub fn div_floor(&self, modulus: &Rat) -> BigInt {
        (&self.0 / &modulus.0).floor().to_integer()
    }

    pub fn mul_int(&self, k: i64) -> Rat {
        Rat(&self.0 * BigInt::from(k))
    }

    pub fn div_int(&self, k: i64) -> Rat {
        assert!(k != 0, "division by zero");
        Rat(&self.0 / BigInt::from(k))
    }

    pub fn min(a: &Rat, b: &Rat) -> Rat {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Rat>) -> Rat {
        items.into_iter().fold(Rat::zero(), |acc, x| acc + x)
    }

    /// Denominator as a machine integer when it fits.
    pub fn denom_u64(&self) -> Option<u64> {
        self.0.denom().to_u64()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Rat, ExactError> {
        let s = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rat::from_big(p, q)
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(p)))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Str(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Rat::from_int(n)),
        }
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $Trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $Trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $Trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, like the integer types; use `checked_div` on
// untrusted input.
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

/// An angle in turns, reduced modulo a positive rational modulus.
///
/// The modulus is `1` for points of the circle, `1/m` for points of the
/// quotient circle by the cyclic group of order `m`, and `m` for the
/// coordinate of the cyclic simplex model.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TurnRepr", into = "TurnRepr")]
pub struct Turn {
    value: Rat,
    modulus: Rat,
}

#[derive(Serialize, Deserialize)]
struct TurnRepr {
    value: Rat,
    modulus: Rat,
}

impl TryFrom<TurnRepr> for Turn {
    type Error = ExactError;
    fn try_from(r: TurnRepr) -> Result<Turn, ExactError> {
        Turn::new(r.value, r.modulus)
    }
}

impl From<Turn> for TurnRepr {
    fn from(t: Turn) -> TurnRepr {
        TurnRepr {
            value: t.value,
            modulus: t.modulus,
        }
    }
}

impl Turn {
    pub fn new(value: Rat, modulus: Rat) -> Result<Turn, ExactError> {
        if !modulus.is_positive() {
            return Err(ExactError::NonPositiveModulus(modulus));
        }
        Ok(Turn {
            value: value.rem_euclid(&modulus),
            modulus,
        })
    }

    /// A point of the unit circle.
    pub fn on_circle(value: Rat) -> Turn {
        Turn {
            value: value.rem_euclid(&Rat::one()),
            modulus: Rat::one(),
        }
    }

    /// A point of the circle modulo the cyclic group of order `m`.
    pub fn on_quotient(value: Rat, m: u32) -> Turn {
        let modulus = Rat::new(1, m as i64);
        Turn {
            value: value.rem_euclid(&modulus),
            modulus,
        }
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn modulus(&self) -> &Rat {
        &self.modulus
    }

    pub fn into_value(self) -> Rat {
        self.value
    }

    fn check_same(&self, other: &Turn) -> Result<(), ExactError> {
        if self.modulus != other.modulus {
            return Err(ExactError::ModulusMismatch {
                left: self.modulus.clone(),
                right: Box::new(other.modulus.clone()),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Turn) -> Result<Turn, ExactError> {
        self.check_same(other)?;
        Ok(self.rotate(&other.value))
    }

    pub fn sub(&self, other: &Turn) -> Result<Turn, ExactError> {
        self.check_same(other)?;
        Ok(self.rotate(&-&other.value))
    }

    /// Rotate counter-clockwise by `delta` turns.
    pub fn rotate(&self, delta: &Rat) -> Turn {
        Turn {
            value: (&self.value + delta).rem_euclid(&self.modulus),
            modulus: self.modulus.clone(),
        }
    }

    /// Counter-clockwise distance from `self` to `other`, in `[0, modulus)`.
    pub fn ccw_gap(&self, other: &Turn) -> Result<Rat, ExactError> {
        self.check_same(other)?;
        Ok((&other.value - &self.value).rem_euclid(&self.modulus))
    }

    /// Shortest distance between two points, in `[0, modulus/2]`.
    pub fn circular_distance(&self, other: &Turn) -> Result<Rat, ExactError> {
        let g = self.ccw_gap(other)?;
        let back = &self.modulus - &g;
        Ok(Rat::min(&g, &back))
    }

    /// Reduce to a coarser modulus that divides this one.
    pub fn reduce(&self, modulus: &Rat) -> Result<Turn, ExactError> {
        let ratio = self.modulus.checked_div(modulus)?;
        if !ratio.is_integer() || !ratio.is_positive() {
            return Err(ExactError::ModulusMismatch {
                left: self.modulus.clone(),
                right: Box::new(modulus.clone()),
            });
        }
        Turn::new(self.value.clone(), modulus.clone())
    }
}

impl PartialOrd for Turn {
    fn partial_cmp(&self, other: &Turn) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Turn {
    fn cmp(&self, other: &Turn) -> Ordering {
        (&self.modulus, &self.value).cmp(&(&other.modulus, &other.value))
    }
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// A closed or open arc of the circle given by center and half-width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcInterval {
    pub center: Turn,
    pub half_width: Rat,
}

impl ArcInterval {
    pub fn new(center: Turn, half_width: Rat) -> Result<ArcInterval, ExactError> {
        if half_width.is_negative() || half_width > center.modulus().div_int(2) {
            return Err(ExactError::HalfWidthOutOfRange {
                half_width,
                modulus: Box::new(center.modulus().clone()),
            });
        }
        Ok(ArcInterval { center, half_width })
    }

    pub fn rotate(&self, delta: &Rat) -> ArcInterval {
        ArcInterval {
            center: self.center.rotate(delta),
            half_width: self.half_width.clone(),
        }
    }
}

/// Whether two arcs meet as subsets of the circle.
///
/// With `open_ends` the arcs are open, so a zero half-width arc is empty and
/// arcs that only share an endpoint do not meet. Otherwise the arcs are
/// closed and a zero half-width arc is its center point.
pub fn arcs_overlap(a: &ArcInterval, b: &ArcInterval, open_ends: bool) -> Result<bool, ExactError> {
    let d = a.center.circular_distance(&b.center)?;
    let reach = &a.half_width + &b.half_width;
    if open_ends {
        Ok(a.half_width.is_positive() && b.half_width.is_positive() && d < reach)
    } else {
        Ok(d <= reach)
    }
}

/// Draw a rational with denominator at most `bound_den` from `[lo, hi]`.
pub fn sample_rat_with<R: Rng + ?Sized>(
    rng: &mut R,
    bound_den: u64,
    lo: &Rat,
    hi: &Rat,
) -> Result<Rat, ExactError> {
    if lo >= hi {
        return Err(ExactError::EmptyRange {
            lo: lo.clone(),
            hi: Box::new(hi.clone()),
        });
    }
    if bound_den == 0 {
        return Err(ExactError::BadDenominatorBound);
    }
    // Numerator windows per denominator; only denominators with a
    // representable point are eligible.
    let window = |q: u64| -> Option<(BigInt, BigInt)> {
        let qb = BigInt::from(q);
        let lo_n = ceil_div(&(lo.numer() * &qb), lo.denom());
        let hi_n = (hi.numer() * &qb).div_floor(hi.denom());
        (lo_n <= hi_n).then_some((lo_n, hi_n))
    };
    for _ in 0..8 {
        let q = rng.gen_range(1..=bound_den);
        if let Some((a, b)) = window(q) {
            return Ok(pick_between(rng, &a, &b, q));
        }
    }
    let eligible: Vec<u64> = (1..=bound_den).filter(|&q| window(q).is_some()).collect();
    if eligible.is_empty() {
        return Err(ExactError::NoRepresentable {
            lo: lo.clone(),
            hi: Box::new(hi.clone()),
            bound_den,
        });
    }
    let q = eligible[rng.gen_range(0..eligible.len())];
    let (a, b) = window(q).expect("eligible");
    Ok(pick_between(rng, &a, &b, q))
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn pick_between<R: Rng + ?Sized>(rng: &mut R, a: &BigInt, b: &BigInt, q: u64) -> Rat {
    let span = (b - a).to_u64().unwrap_or(u64::MAX);
    let off = rng.gen_range(0..=span);
    Rat::from_big(a + BigInt::from(off), BigInt::from(q)).expect("q > 0")
}

/// Seeded, deterministic rational sample from `[lo, hi]`.
pub fn sample_rat(seed: u64, bound_den: u64, lo: &Rat, hi: &Rat) -> Result<Rat, ExactError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_rat_with(&mut rng, bound_den, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    fn arc(c: Rat, hw: Rat) -> ArcInterval {
        ArcInterval::new(Turn::on_circle(c), hw).unwrap()
    }

    #[test]
    fn lowest_terms_and_display() {
        assert_eq!(r(2, 4).to_string(), "1/2");
        assert_eq!(r(-6, -3).to_string(), "2");
        assert_eq!(r(3, -9).to_string(), "-1/3");
        assert_eq!("2/4".parse::<Rat>().unwrap(), r(1, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let s = serde_json::to_string(&r(6, 8)).unwrap();
        assert_eq!(s, "\"3/4\"");
        let back: Rat = serde_json::from_str("\"-10/4\"").unwrap();
        assert_eq!(back, r(-5, 2));
        let t = Turn::on_quotient(r(5, 4), 2);
        let js = serde_json::to_value(&t).unwrap();
        assert_eq!(js, serde_json::json!({"value": "1/4", "modulus": "1/2"}));
    }

    #[test]
    fn turn_canonical_representative() {
        assert_eq!(Turn::on_circle(r(5, 4)).value(), &r(1, 4));
        assert_eq!(Turn::on_circle(r(-1, 4)).value(), &r(3, 4));
        assert_eq!(Turn::on_quotient(r(1, 2), 3).value(), &r(1, 6));
        assert_eq!(Turn::on_quotient(r(1, 3), 3).value(), &Rat::zero());
        assert!(Turn::new(Rat::one(), Rat::zero()).is_err());
    }

    #[test]
    fn turn_modulus_mismatch_is_an_error() {
        let a = Turn::on_circle(r(1, 4));
        let b = Turn::on_quotient(r(1, 4), 2);
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn overlap_examples() {
        // Quarter-turn apart in both directions.
        assert!(!arcs_overlap(&arc(r(0, 1), r(1, 8)), &arc(r(1, 2), r(1, 8)), true).unwrap());
        let p = arc(r(1, 3), Rat::zero());
        assert!(arcs_overlap(&p, &p, false).unwrap());
        assert!(!arcs_overlap(&p, &p, true).unwrap());
        let a = arc(r(0, 1), r(1, 4));
        let b = arc(r(1, 2), r(1, 4));
        assert!(!arcs_overlap(&a, &b, true).unwrap());
        assert!(arcs_overlap(&a, &b, false).unwrap());
    }

    #[test]
    fn overlap_wraps_around_zero() {
        let a = arc(r(15, 16), r(1, 8));
        let b = arc(r(1, 16), r(1, 16));
        assert!(arcs_overlap(&a, &b, true).unwrap());
    }

    #[test]
    fn overlap_rejects_mixed_moduli() {
        let a = arc(r(0, 1), r(1, 8));
        let b = ArcInterval::new(Turn::on_quotient(r(0, 1), 2), r(1, 8)).unwrap();
        assert!(arcs_overlap(&a, &b, true).is_err());
    }

    #[test]
    fn half_width_bound() {
        assert!(ArcInterval::new(Turn::on_quotient(Rat::zero(), 2), r(1, 4)).is_ok());
        assert!(ArcInterval::new(Turn::on_quotient(Rat::zero(), 2), r(1, 3)).is_err());
    }

    #[test]
    fn sample_rat_contract() {
        let x = sample_rat(0, 8, &Rat::zero(), &Rat::one()).unwrap();
        assert!(x >= Rat::zero() && x <= Rat::one());
        assert!(x.denom_u64().unwrap() <= 8);
        assert_eq!(x, sample_rat(0, 8, &Rat::zero(), &Rat::one()).unwrap());
        let y = sample_rat(1, 1, &Rat::zero(), &Rat::one()).unwrap();
        assert!(y == Rat::zero() || y == Rat::one());
        assert!(sample_rat(0, 4, &Rat::one(), &Rat::one()).is_err());
        // (1/3, 1/2) holds no rational with denominator one or two.
        assert!(sample_rat(0, 2, &r(1, 3), &r(2, 5)).is_err());
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..12).prop_map(|(p, q)| Rat::new(p, q))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a - &a, Rat::zero());
            if !b.is_zero() {
                prop_assert_eq!((&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn canonicalization_is_periodic(x in small_rat(), m in 1u32..6) {
            let modulus = Rat::new(1, m as i64);
            let t = Turn::on_quotient(x.clone(), m);
            prop_assert_eq!(&t, &Turn::on_quotient(&x + &modulus, m));
            prop_assert!(t.value() >= &Rat::zero() && t.value() < &modulus);
        }

        #[test]
        fn overlap_symmetric_and_rotation_invariant(
            c1 in small_rat(), c2 in small_rat(), h1 in 0i64..5, h2 in 0i64..5,
            rho in small_rat(), open in any::<bool>()
        ) {
            let a = arc(c1, Rat::new(h1, 10));
            let b = arc(c2, Rat::new(h2, 10));
            let ab = arcs_overlap(&a, &b, open).unwrap();
            prop_assert_eq!(ab, arcs_overlap(&b, &a, open).unwrap());
            prop_assert_eq!(ab, arcs_overlap(&a.rotate(&rho), &b.rotate(&rho), open).unwrap());
        }

        #[test]
        fn sampled_rats_stay_in_range(seed in any::<u64>(), den in 1u64..20) {
            let lo = Rat::new(-1, 2);
            let hi = Rat::new(3, 4);
            let x = sample_rat(seed, den, &lo, &hi).unwrap();
            prop_assert!(x >= lo && x <= hi);
            prop_assert!(x.denom_u64().unwrap() <= den);
        }
    }
}
