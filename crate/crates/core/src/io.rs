//! JSON documents for geometries, orderings, point configurations, body
//! families and representations.
//!
//! Rationals travel as `"p/q"` strings. Wherever a coordinate is read, a plain
//! JSON number or a decimal string is accepted as well and converted exactly.

use serde::{Deserialize, Serialize};

use crate::bodies::{BodyError, BodyFamily, PlanarBody, SampledBoundary};
use crate::dimension::{DimensionError, RationalPointConfig};
use crate::ellipsoid::EllipsoidRepresentation;
use crate::exact::{format_rational, parse_rational, rational_from_f64, to_f64, ParseRationalError, QPoint, Rational};
use crate::geometry::{ConvexGeometry, GeometryError, GroundSet, OrderingFamily, SetFamily};
use crate::planar::PlanarRepresentation;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
    #[error(transparent)]
    Body(#[from] BodyError),
}

/// A number given either as a JSON number or as a string (`"p/q"` or decimal).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Float(f64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> Result<Rational, IoError> {
        match self {
            Number::Float(x) => {
                rational_from_f64(*x).ok_or_else(|| IoError::Schema(format!("non-finite number {x}")))
            }
            Number::Text(s) => Ok(parse_rational(s)?),
        }
    }

    pub fn to_f64(&self) -> Result<f64, IoError> {
        match self {
            Number::Float(x) => Ok(*x),
            Number::Text(s) => Ok(to_f64(&parse_rational(s)?)),
        }
    }

    fn exact(q: &Rational) -> Self {
        Number::Text(format_rational(q))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryDoc {
    pub elements: Vec<String>,
    pub convex_sets: Vec<Vec<usize>>,
}

impl GeometryDoc {
    pub fn from_geometry(g: &ConvexGeometry) -> Self {
        GeometryDoc {
            elements: g.ground().labels().to_vec(),
            convex_sets: g.members().iter().map(|s| s.indices()).collect(),
        }
    }

    /// Validates the axioms; sets are canonicalized on the way in.
    pub fn to_geometry(&self) -> Result<ConvexGeometry, IoError> {
        let ground = GroundSet::new(self.elements.iter().cloned())?;
        Ok(ConvexGeometry::new(SetFamily::from_index_lists(ground, &self.convex_sets)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderingsDoc {
    pub elements: Vec<String>,
    pub orders: Vec<Vec<usize>>,
}

impl OrderingsDoc {
    pub fn from_orderings(o: &OrderingFamily) -> Self {
        OrderingsDoc { elements: o.ground().labels().to_vec(), orders: o.orders().to_vec() }
    }

    pub fn to_orderings(&self) -> Result<OrderingFamily, IoError> {
        let ground = GroundSet::new(self.elements.iter().cloned())?;
        Ok(OrderingFamily::new(ground, self.orders.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledPoint {
    pub label: String,
    pub coords: Vec<Number>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDoc {
    pub dim: usize,
    pub points: Vec<LabeledPoint>,
}

impl PointsDoc {
    pub fn from_config(c: &RationalPointConfig) -> Self {
        let points = c
            .labels()
            .iter()
            .zip(c.points())
            .map(|(label, p)| LabeledPoint { label: label.clone(), coords: p.iter().map(Number::exact).collect() })
            .collect();
        PointsDoc { dim: c.dim(), points }
    }

    pub fn to_config(&self) -> Result<RationalPointConfig, IoError> {
        let labels = self.points.iter().map(|p| p.label.clone()).collect();
        let coords = self
            .points
            .iter()
            .map(|p| p.coords.iter().map(Number::to_rational).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RationalPointConfig::new(self.dim, labels, coords)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodyShape {
    Circle { center: [Number; 2], r: Number },
    Ellipse { center: [Number; 2], a: Number, b: Number, theta: Number },
    Polygon { vertices: Vec<[Number; 2]> },
    Sampled { vertices: Vec<[f64; 2]> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BodyDoc {
    pub label: String,
    #[serde(flatten)]
    pub shape: BodyShape,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodiesDoc {
    pub bodies: Vec<BodyDoc>,
}

fn point_f64(p: &[Number; 2]) -> Result<[f64; 2], IoError> {
    Ok([p[0].to_f64()?, p[1].to_f64()?])
}

fn qpoint_doc(p: &QPoint) -> [Number; 2] {
    [Number::exact(&p.x), Number::exact(&p.y)]
}

impl BodyShape {
    pub fn from_body(b: &PlanarBody) -> Self {
        match b {
            PlanarBody::Circle(c) => BodyShape::Circle {
                center: c.center.map(Number::Float),
                r: Number::Float(c.radius),
            },
            PlanarBody::Ellipse(e) => BodyShape::Ellipse {
                center: e.center.map(Number::Float),
                a: Number::Float(e.a),
                b: Number::Float(e.b),
                theta: Number::Float(e.theta),
            },
            PlanarBody::Polygon(p) => BodyShape::Polygon { vertices: p.vertices().iter().map(qpoint_doc).collect() },
            PlanarBody::Sampled(s) => BodyShape::Sampled { vertices: s.vertices().to_vec() },
        }
    }

    pub fn to_body(&self) -> Result<PlanarBody, IoError> {
        Ok(match self {
            BodyShape::Circle { center, r } => PlanarBody::circle(point_f64(center)?, r.to_f64()?)?,
            BodyShape::Ellipse { center, a, b, theta } => {
                PlanarBody::ellipse(point_f64(center)?, a.to_f64()?, b.to_f64()?, theta.to_f64()?)?
            }
            BodyShape::Polygon { vertices } => {
                let v = vertices
                    .iter()
                    .map(|p| Ok(QPoint::new(p[0].to_rational()?, p[1].to_rational()?)))
                    .collect::<Result<Vec<_>, IoError>>()?;
                PlanarBody::polygon(v)?
            }
            BodyShape::Sampled { vertices } => PlanarBody::Sampled(SampledBoundary::new(vertices.clone())?),
        })
    }
}

impl BodiesDoc {
    pub fn from_family(f: &BodyFamily) -> Self {
        let bodies = f
            .labels()
            .iter()
            .zip(f.bodies())
            .map(|(label, b)| BodyDoc { label: label.clone(), shape: BodyShape::from_body(b) })
            .collect();
        BodiesDoc { bodies }
    }

    pub fn to_family(&self) -> Result<BodyFamily, IoError> {
        let labels = self.bodies.iter().map(|b| b.label.clone()).collect();
        let bodies = self.bodies.iter().map(|b| b.shape.to_body()).collect::<Result<Vec<_>, _>>()?;
        Ok(BodyFamily::new(labels, bodies)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    /// `"exact"` or `"float"`.
    pub mode: String,
    pub m: usize,
    pub epsilon: String,
    pub directions: Vec<[Number; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PinchedDoc {
    pub label: String,
    pub places: Vec<usize>,
    pub rho1: Vec<String>,
    pub rho2: Vec<String>,
    pub inner: Vec<[Number; 2]>,
    pub outer: Vec<[Number; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub frame: FrameDoc,
    pub orderings: OrderingsDoc,
    pub elements: Vec<PinchedDoc>,
    pub shape: String,
    pub bodies: Vec<BodyDoc>,
}

impl RepresentationDoc {
    pub fn from_representation(rep: &PlanarRepresentation) -> Self {
        let labels = rep.orderings.ground().labels();
        let frame = FrameDoc {
            mode: if rep.frame.is_exact() { "exact" } else { "float" }.into(),
            m: rep.frame.m(),
            epsilon: format_rational(rep.frame.epsilon()),
            directions: rep.frame.directions().iter().map(qpoint_doc).collect(),
        };
        let elements = rep
            .pairs
            .iter()
            .map(|p| PinchedDoc {
                label: labels[p.element].clone(),
                places: p.places.clone(),
                rho1: p.rho1.iter().map(format_rational).collect(),
                rho2: p.rho2.iter().map(format_rational).collect(),
                inner: p.f1.iter().map(qpoint_doc).collect(),
                outer: p.f2.iter().map(qpoint_doc).collect(),
            })
            .collect();
        RepresentationDoc {
            frame,
            orderings: OrderingsDoc::from_orderings(&rep.orderings),
            elements,
            shape: rep.shape.name().into(),
            bodies: BodiesDoc::from_family(&rep.bodies).bodies,
        }
    }

    /// The bodies `K(x)`, in element order.
    pub fn to_family(&self) -> Result<BodyFamily, IoError> {
        BodiesDoc { bodies: self.bodies.clone() }.to_family()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipsoidElementDoc {
    pub label: String,
    pub semiaxes: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipsoidDoc {
    pub dim: usize,
    pub s: f64,
    pub elements: Vec<EllipsoidElementDoc>,
    pub orderings_used: Vec<Vec<usize>>,
}

impl EllipsoidDoc {
    pub fn from_representation(rep: &EllipsoidRepresentation) -> Self {
        let elements = rep
            .labels()
            .iter()
            .zip(&rep.ellipsoids)
            .map(|(label, e)| EllipsoidElementDoc { label: label.clone(), semiaxes: e.semiaxes().to_vec() })
            .collect();
        EllipsoidDoc { dim: rep.dim(), s: rep.s(), elements, orderings_used: rep.orderings.orders().to_vec() }
    }
}

/// Parses any of the document types above.
pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}
