//! JSON encoding of shapes.
//!
//! ```json
//! {"type":"polygon","vertices":[[0,0],[1,0],[0,1]]}
//! {"type":"hpolytope","normals":[[1,0],[0,1],[-1,-1]],"offsets":[1,1,0]}
//! {"type":"vpolytope3","vertices":[[0,0,0],[1,0,0],[0,1,0],[0,0,1]]}
//! {"type":"ball","center":[0.5,0.5],"radius":0.5}
//! {"type":"mu_polygon","mu":4,"lengths":[1,1,1,1]}
//! ```
//!
//! A `mu_polygon` decodes to the polygon it describes, anchored at the origin.

use serde::{Deserialize, Serialize};

use crate::ball::Ball;
use crate::error::{GeomError, Result};
use crate::hpolytope::HPolytope;
use crate::mu::{polygon_from_phi, MuVector};
use crate::polygon::ConvexPolygon;
use crate::polytope3::VPolytope3;
use crate::shape::Shape;
use crate::vector::{Vec2, Vec3};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeDoc {
    Polygon { vertices: Vec<[f64; 2]> },
    Hpolytope { normals: Vec<Vec<f64>>, offsets: Vec<f64> },
    Vpolytope3 { vertices: Vec<[f64; 3]> },
    Ball { center: Vec<f64>, radius: f64 },
    MuPolygon { mu: usize, lengths: Vec<f64> },
}

impl ShapeDoc {
    pub fn from_shape(s: &Shape<f64>) -> Self {
        match s {
            Shape::Polygon(p) => ShapeDoc::Polygon { vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect() },
            Shape::HPolytope(h) => ShapeDoc::Hpolytope { normals: h.normals().to_vec(), offsets: h.offsets().to_vec() },
            Shape::Polytope3(k) => {
                ShapeDoc::Vpolytope3 { vertices: k.vertices().iter().map(|v| [v.x, v.y, v.z]).collect() }
            }
            Shape::Ball(b) => ShapeDoc::Ball { center: b.center.clone(), radius: b.radius },
        }
    }

    pub fn from_mu_vector(v: &MuVector<f64>) -> Self {
        ShapeDoc::MuPolygon { mu: v.mu(), lengths: v.lengths().to_vec() }
    }

    pub fn into_shape(self) -> Result<Shape<f64>> {
        Ok(match self {
            ShapeDoc::Polygon { vertices } => {
                ConvexPolygon::new(vertices.into_iter().map(|[x, y]| Vec2::new(x, y)).collect())?.into()
            }
            ShapeDoc::Hpolytope { normals, offsets } => HPolytope::new(normals, offsets)?.into(),
            ShapeDoc::Vpolytope3 { vertices } => {
                let pts: Vec<_> = vertices.into_iter().map(|[x, y, z]| Vec3::new(x, y, z)).collect();
                VPolytope3::from_points(&pts)?.into()
            }
            ShapeDoc::Ball { center, radius } => Ball::new(center, radius)?.into(),
            ShapeDoc::MuPolygon { mu, lengths } => polygon_from_phi(&MuVector::new(mu, lengths)?)?.into(),
        })
    }
}

/// Byte offset of a 1-based line/column position.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

/// Parses a shape document; syntax errors report the byte offset.
pub fn parse_doc(text: &str) -> Result<ShapeDoc> {
    serde_json::from_str(text).map_err(|e| GeomError::Parse {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })
}

pub fn parse_shape(text: &str) -> Result<Shape<f64>> {
    parse_doc(text)?.into_shape()
}

pub fn shape_to_json(s: &Shape<f64>) -> String {
    serde_json::to_string(&ShapeDoc::from_shape(s)).expect("shape documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_all_kinds() {
        let shapes: Vec<Shape<f64>> = vec![
            ConvexPolygon::regular(7, 0.3, 0.1).into(),
            HPolytope::from_polygon(&ConvexPolygon::unit_square()).into(),
            VPolytope3::regular_tetrahedron(1.0).into(),
            Ball::new(vec![0.1, 0.2, 0.3], 0.7).unwrap().into(),
        ];
        for s in shapes {
            let back = parse_shape(&shape_to_json(&s)).unwrap();
            match (&back, &s) {
                // The hull may list vertices in a different order.
                (Shape::Polytope3(a), Shape::Polytope3(b)) => {
                    let key = |k: &VPolytope3<f64>| {
                        let mut v: Vec<[f64; 3]> = k.vertices().iter().map(|p| [p.x, p.y, p.z]).collect();
                        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
                        v
                    };
                    assert_eq!(key(a), key(b));
                }
                _ => assert_eq!(back, s),
            }
        }
    }

    #[test]
    fn mu_polygon_decodes() {
        let s = parse_shape(r#"{"type":"mu_polygon","mu":4,"lengths":[2,1,2,1]}"#).unwrap();
        let p = s.as_polygon().unwrap();
        assert!((p.area().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn syntax_error_offset() {
        let text = "{\"type\":\"ball\",\n \"center\":[0,0],, \"radius\":1}";
        match parse_doc(text) {
            Err(GeomError::Parse { offset, .. }) => assert_eq!(&text[offset..offset + 1], ","),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_shape_rejected() {
        assert!(parse_shape(r#"{"type":"ball","center":[0,0],"radius":-1}"#).is_err());
        assert!(parse_shape(r#"{"type":"polygon","vertices":[[0,0],[0,1],[1,0]]}"#).is_err());
        assert!(matches!(parse_shape(r#"{"type":"cone"}"#), Err(GeomError::Parse { .. })));
    }
}
