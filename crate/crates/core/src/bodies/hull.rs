use std::cell::OnceCell;
use std::f64::consts::TAU;

use super::crossings::pairwise_crossings;
use super::support::{grid_angle, support, support_table, unit};
use super::{angle_of, norm, sub, BodyConfig, BodyError, BodyFamily, MAX_BODIES};
use crate::exact::{convex_hull, in_convex_hull, QPoint};
use crate::geometry::{ClosureTable, ConvexGeometry, GroundSet, SetFamily};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HullMode {
    /// Exact predicates when every body involved is a polygon, floats otherwise.
    #[default]
    Auto,
    /// Always sample support functions.
    Numeric,
}

/// Why a containment verdict holds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Certificate {
    /// The body is itself one of the hull's generators.
    Member,
    /// Decided by exact rational orientation tests.
    Exact,
    /// Circles touching the hull boundary: the closed-form minimum margin is
    /// zero up to rounding.
    Contact { angle: f64, margin: f64 },
    /// Minimal support margin `h(hull, u) − h(K, u)` and the angle where it occurs.
    Margin { min_margin: f64, angle: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HullVerdict {
    pub contained: bool,
    pub certificate: Certificate,
}

impl HullVerdict {
    fn member() -> Self {
        HullVerdict { contained: true, certificate: Certificate::Member }
    }

    fn exact(contained: bool) -> Self {
        HullVerdict { contained, certificate: Certificate::Exact }
    }
}

/// Whether body `body` lies in the convex hull of the union of the bodies in `s`.
pub fn in_hull(family: &BodyFamily, body: usize, s: Subset, cfg: &BodyConfig) -> Result<HullVerdict, BodyError> {
    in_hull_with_mode(family, body, s, cfg, HullMode::Auto)
}

pub fn in_hull_with_mode(
    family: &BodyFamily,
    body: usize,
    s: Subset,
    cfg: &BodyConfig,
    mode: HullMode,
) -> Result<HullVerdict, BodyError> {
    HullEvaluator::new(family, cfg, mode).verdict(body, s)
}

/// `conv_𝒦(S)`: the indices of all bodies contained in the hull of the bodies in `s`.
pub fn conv_closure(family: &BodyFamily, s: Subset, cfg: &BodyConfig) -> Result<Subset, BodyError> {
    HullEvaluator::new(family, cfg, HullMode::Auto).closure(s)
}

/// `conv_𝒦` tabulated on every subset of the family.
pub fn body_closure_table(family: &BodyFamily, cfg: &BodyConfig) -> Result<ClosureTable, BodyError> {
    let n = family.len();
    if n > MAX_BODIES {
        return Err(BodyError::TooManyBodies { n, cap: MAX_BODIES });
    }
    let eval = HullEvaluator::new(family, cfg, HullMode::Auto);
    ClosureTable::try_tabulate(n, |s| eval.closure(s))
}

/// The convex geometry `(𝒦, conv_𝒦)`: `X` is convex iff `conv_𝒦(X) = X`.
///
/// Pairs of bodies whose support functions agree on an interval of directions
/// are rejected up front, since the closure then need not anti-exchange.
pub fn geometry_from_bodies(family: &BodyFamily, cfg: &BodyConfig) -> Result<ConvexGeometry, BodyError> {
    let n = family.len();
    if n > MAX_BODIES {
        return Err(BodyError::TooManyBodies { n, cap: MAX_BODIES });
    }
    pairwise_crossings(family, cfg)?;
    let table = body_closure_table(family, cfg)?;
    let ground = GroundSet::new(family.labels().iter().cloned())?;
    let fam = SetFamily::new(ground, table.fixed_points())?;
    ConvexGeometry::new(fam).map_err(BodyError::from)
}

/// Whether no body of `s` lies in the hull of the others.
pub fn convex_position(family: &BodyFamily, s: Subset, cfg: &BodyConfig) -> Result<bool, BodyError> {
    if s.len() < 2 {
        return Err(BodyError::SubsetTooSmall(s.len()));
    }
    let eval = HullEvaluator::new(family, cfg, HullMode::Auto);
    for i in s.iter() {
        if eval.verdict(i, s.without(i))?.contained {
            return Ok(false);
        }
    }
    Ok(true)
}

struct HullEvaluator<'a> {
    family: &'a BodyFamily,
    cfg: &'a BodyConfig,
    mode: HullMode,
    tables: OnceCell<Vec<Vec<f64>>>,
}

impl<'a> HullEvaluator<'a> {
    fn new(family: &'a BodyFamily, cfg: &'a BodyConfig, mode: HullMode) -> Self {
        HullEvaluator { family, cfg, mode, tables: OnceCell::new() }
    }

    fn closure(&self, s: Subset) -> Result<Subset, BodyError> {
        if s.is_empty() {
            return Ok(s);
        }
        let outside = Subset::full(self.family.len()).difference(s);
        if self.mode == HullMode::Auto && self.family.all_polygons() {
            let hull = self.exact_hull(s);
            return Ok(outside.iter().filter(|&k| self.polygon_inside(k, &hull)).fold(s, Subset::with));
        }
        let mut out = s;
        for k in outside.iter() {
            if self.verdict(k, s)?.contained {
                out = out.with(k);
            }
        }
        Ok(out)
    }

    fn verdict(&self, body: usize, s: Subset) -> Result<HullVerdict, BodyError> {
        if s.is_empty() {
            return Err(BodyError::EmptySubset);
        }
        if s.contains(body) {
            return Ok(HullVerdict::member());
        }
        let involved = s.with(body);
        let bodies = self.family.bodies();
        if self.mode == HullMode::Auto && involved.iter().all(|i| bodies[i].as_polygon().is_some()) {
            return Ok(HullVerdict::exact(self.polygon_inside(body, &self.exact_hull(s))));
        }
        if involved.iter().all(|i| bodies[i].as_circle().is_some()) {
            return Ok(self.circle_verdict(body, s));
        }
        self.numeric_verdict(body, s)
    }

    fn exact_hull(&self, s: Subset) -> Vec<QPoint> {
        let pts: Vec<QPoint> = s
            .iter()
            .flat_map(|i| self.family.body(i).as_polygon().expect("polygon family").vertices().iter().cloned())
            .collect();
        convex_hull(&pts)
    }

    fn polygon_inside(&self, body: usize, hull: &[QPoint]) -> bool {
        let poly = self.family.body(body).as_polygon().expect("polygon family");
        poly.vertices().iter().all(|v| in_convex_hull(hull, v))
    }

    /// Closed-form minimum of `max_i (⟨c_i − c, u⟩ + r_i − r)` over the circle:
    /// the envelope of sinusoids attains its minimum either at a minimum of
    /// one term or where two terms cross.
    fn circle_verdict(&self, body: usize, s: Subset) -> HullVerdict {
        let k = self.family.body(body).as_circle().expect("circle");
        let terms: Vec<([f64; 2], f64)> = s
            .iter()
            .map(|i| {
                let c = self.family.body(i).as_circle().expect("circle");
                (sub(c.center, k.center), c.radius - k.radius)
            })
            .collect();
        let envelope = |theta: f64| {
            let u = unit(theta);
            terms.iter().map(|(d, delta)| d[0] * u[0] + d[1] * u[1] + delta).fold(f64::NEG_INFINITY, f64::max)
        };
        let mut candidates = vec![0.0];
        for (i, (d, _)) in terms.iter().enumerate() {
            if norm(*d) > 0.0 {
                candidates.push(angle_of([-d[0], -d[1]]));
            }
            for (e, delta_e) in &terms[i + 1..] {
                let w = sub(*d, *e);
                let len = norm(w);
                let rhs = delta_e - terms[i].1;
                if len > 0.0 && rhs.abs() <= len {
                    let phi = angle_of(w);
                    let off = (rhs / len).clamp(-1.0, 1.0).acos();
                    candidates.push(phi + off);
                    candidates.push(phi - off);
                }
            }
        }
        let (angle, min) = candidates
            .into_iter()
            .map(|t| (t.rem_euclid(TAU), envelope(t)))
            .fold((0.0, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best });
        let err_bound = 1e-12 * (1.0 + self.family.radius_bound());
        if min.abs() <= err_bound {
            HullVerdict { contained: true, certificate: Certificate::Contact { angle, margin: min } }
        } else {
            HullVerdict { contained: min > 0.0, certificate: Certificate::Margin { min_margin: min, angle } }
        }
    }

    fn tables(&self) -> &Vec<Vec<f64>> {
        self.tables.get_or_init(|| {
            self.family.bodies().iter().map(|b| support_table(b, self.cfg.hull_grid)).collect()
        })
    }

    fn margin_at(&self, body: usize, s: Subset, theta: f64) -> f64 {
        let u = unit(theta);
        let hull = s.iter().map(|i| support(self.family.body(i), u)).fold(f64::NEG_INFINITY, f64::max);
        hull - support(self.family.body(body), u)
    }

    /// Grid scan of the support margin, refined by golden-section search at
    /// every grid-local minimum that could dip below the tolerance band.
    fn numeric_verdict(&self, body: usize, s: Subset) -> Result<HullVerdict, BodyError> {
        let grid = self.cfg.hull_grid;
        let tables = self.tables();
        let margins: Vec<f64> = (0..grid)
            .map(|k| s.iter().map(|i| tables[i][k]).fold(f64::NEG_INFINITY, f64::max) - tables[body][k])
            .collect();
        let step = TAU / grid as f64;
        // the margin is 2R-Lipschitz in the angle
        let threshold = self.cfg.tau + 2.0 * self.family.radius_bound() * step;
        let (mut angle, mut min) = margins
            .iter()
            .enumerate()
            .fold((0.0, f64::INFINITY), |b, (k, &m)| if m < b.1 { (grid_angle(k, grid), m) } else { b });
        for k in 0..grid {
            let (prev, next) = (margins[(k + grid - 1) % grid], margins[(k + 1) % grid]);
            let m = margins[k];
            if m <= prev && m <= next && m <= threshold {
                let center = grid_angle(k, grid);
                let (t, v) = golden_min(|t| self.margin_at(body, s, t), center - step, center + step, 80);
                if v < min {
                    min = v;
                    angle = t.rem_euclid(TAU);
                }
            }
        }
        if min.abs() <= self.cfg.tau {
            return Err(BodyError::ToleranceInconclusive { body, margin: min, angle });
        }
        Ok(HullVerdict { contained: min > 0.0, certificate: Certificate::Margin { min_margin: min, angle } })
    }
}

/// Golden-section search for a minimum of `f` on `[a, b]`; returns `(argmin, min)`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
