//! Exact rational arithmetic: parsing, formatting, and planar orientation predicates.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("cannot parse {input:?} as a rational number")]
pub struct ParseRationalError {
    pub input: String,
}

/// Parses `"p/q"`, an integer, or a decimal such as `"-0.125"` or `"3e-2"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: s.to_owned() };
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(if all_digits.is_empty() { "0" } else { &all_digits }).map_err(|_| err())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut r = Rational::from_integer(num);
    if scale >= 0 {
        r *= Rational::from_integer(num::pow(ten, scale as usize));
    } else {
        r /= Rational::from_integer(num::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}

/// Exact value of a finite float.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `"p/q"`, or just `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Largest fraction `k / den` not exceeding `x` (for turning float parameters into small rationals).
pub fn rational_floor(x: f64, den: u64) -> Rational {
    let k = (x * den as f64).floor();
    Rational::new(BigInt::from(k as i64), BigInt::from(den))
}

/// Rational approximation of `x` with `|x - p/q| <= tol`, from continued-fraction convergents.
pub fn rational_approx(x: f64, tol: f64) -> Rational {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let approx = Rational::new(h1.clone(), k1.clone());
        if (to_f64(&approx) - x).abs() <= tol {
            return approx;
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    Rational::new(h1, k1)
}

/// A point of `ℚ²`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoint {
    pub x: Rational,
    pub y: Rational,
}

impl QPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        QPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        QPoint::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    pub fn from_f64(x: f64, y: f64) -> Option<Self> {
        Some(QPoint::new(rational_from_f64(x)?, rational_from_f64(y)?))
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }

    pub fn sub(&self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &Rational) -> QPoint {
        QPoint::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &QPoint) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &QPoint) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    /// Counterclockwise rotation by 90°.
    pub fn perp(&self) -> QPoint {
        QPoint::new(-&self.y, self.x.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Debug for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// Sign of the turn `a → b → c`: `Greater` for a left (counterclockwise) turn.
pub fn orient(a: &QPoint, b: &QPoint, c: &QPoint) -> Ordering {
    b.sub(a).cross(&c.sub(a)).cmp(&Rational::zero())
}

/// Convex hull in counterclockwise order with collinear points removed.
/// Degenerate inputs give one or two points.
pub fn convex_hull(points: &[QPoint]) -> Vec<QPoint> {
    let mut pts: Vec<QPoint> = points.to_vec();
    pts.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<QPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<QPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Whether `p` lies in the closed convex polygon `hull` (counterclockwise,
/// as produced by [`convex_hull`]; one- and two-point hulls are handled).
pub fn in_convex_hull(hull: &[QPoint], p: &QPoint) -> bool {
    match hull.len() {
        0 => false,
        1 => &hull[0] == p,
        2 => on_segment(&hull[0], &hull[1], p),
        n => (0..n).all(|i| orient(&hull[i], &hull[(i + 1) % n], p) != Ordering::Less),
    }
}

/// Whether `p` lies strictly inside the convex polygon `hull` (counterclockwise, ≥ 3 vertices).
pub fn strictly_inside(hull: &[QPoint], p: &QPoint) -> bool {
    let n = hull.len();
    n >= 3 && (0..n).all(|i| orient(&hull[i], &hull[(i + 1) % n], p) == Ordering::Greater)
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(a: &QPoint, b: &QPoint, p: &QPoint) -> bool {
    if orient(a, b, p) != Ordering::Equal {
        return false;
    }
    let ab = b.sub(a);
    let ap = p.sub(a);
    let t = ab.dot(&ap);
    !t.is_negative() && t <= ab.dot(&ab)
}

/// Whether the closed segments `ab` and `cd` share a point.
pub fn segments_intersect(a: &QPoint, b: &QPoint, c: &QPoint, d: &QPoint) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal
        && o3 != Ordering::Equal && o4 != Ordering::Equal
    {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(q("3/6"), Rational::new(1.into(), 2.into()));
        assert_eq!(q("-0.125"), Rational::new((-1).into(), 8.into()));
        assert_eq!(q("2"), Rational::from_integer(2.into()));
        assert_eq!(q("3e-2"), Rational::new(3.into(), 100.into()));
        assert_eq!(q("1.5E1"), Rational::from_integer(15.into()));
        assert_eq!(q(".5"), Rational::new(1.into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&q("4/6")), "2/3");
        assert_eq!(format_rational(&q("-7")), "-7");
    }

    #[test]
    fn continued_fraction_approximation() {
        let r = rational_approx(std::f64::consts::PI, 1e-6);
        assert!((to_f64(&r) - std::f64::consts::PI).abs() <= 1e-6);
        assert_eq!(r, Rational::new(355.into(), 113.into()));
        assert_eq!(rational_approx(0.5, 1e-12), q("1/2"));
        assert_eq!(rational_approx(-1.75, 1e-12), q("-7/4"));
    }

    #[test]
    fn hull_and_membership() {
        let pts = vec![
            QPoint::from_ints(0, 0),
            QPoint::from_ints(2, 0),
            QPoint::from_ints(1, 0),
            QPoint::from_ints(2, 2),
            QPoint::from_ints(0, 2),
            QPoint::from_ints(1, 1),
        ];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert!(in_convex_hull(&h, &QPoint::from_ints(1, 0)));
        assert!(in_convex_hull(&h, &QPoint::from_ints(1, 1)));
        assert!(!in_convex_hull(&h, &QPoint::from_ints(3, 1)));
        assert!(strictly_inside(&h, &QPoint::from_ints(1, 1)));
        assert!(!strictly_inside(&h, &QPoint::from_ints(1, 0)));
    }

    #[test]
    fn degenerate_hulls() {
        let seg = convex_hull(&[QPoint::from_ints(0, 0), QPoint::from_ints(2, 2), QPoint::from_ints(1, 1)]);
        assert_eq!(seg.len(), 2);
        assert!(in_convex_hull(&seg, &QPoint::from_ints(1, 1)));
        assert!(!in_convex_hull(&seg, &QPoint::from_ints(1, 0)));
        let pt = convex_hull(&[QPoint::from_ints(3, 3)]);
        assert!(in_convex_hull(&pt, &QPoint::from_ints(3, 3)));
    }

    #[test]
    fn segment_intersection() {
        let p = |x, y| QPoint::from_ints(x, y);
        assert!(segments_intersect(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)));
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(2, 0), &p(3, 0)));
    }
}
