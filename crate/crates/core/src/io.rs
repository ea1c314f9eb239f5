//! The `ekd-v1` JSON document format, and JSON helpers for traces and verdicts.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{
    Arc, Crossing, Dart, DiagramParts, EnrichedKnotDiagram, Face, Layout, Point, Sign,
    ValidationReport,
};
use crate::rational::{pq, pq_opt, Q};

pub const FORMAT: &str = "ekd-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EkdDocument {
    pub format: String,
    pub components: usize,
    pub crossings: Vec<CrossingDoc>,
    pub arcs: Vec<ArcDoc>,
    pub faces: Vec<FaceDoc>,
    pub outer_face: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<LayoutDoc>,
}

/// Dart ids in slot order (counterclockwise); dart ids are global.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingDoc {
    pub darts: [usize; 4],
    pub quadrant_sign_0: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDoc {
    pub tail: Option<usize>,
    pub head: Option<usize>,
    pub component: usize,
    /// `[left, right]` for a crossingless closed loop.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loop_faces: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDoc {
    pub boundary: Vec<usize>,
    #[serde(with = "pq_opt")]
    pub area: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc(#[serde(with = "pq")] pub Q, #[serde(with = "pq")] pub Q);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutDoc {
    pub crossings: Vec<PointDoc>,
    /// Interior waypoints of each arc, tail to head.
    #[serde(default)]
    pub arcs: Vec<Vec<PointDoc>>,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("invalid diagram:\n{0}")]
    Validation(ValidationReport),
}

impl IoError {
    fn schema(pointer: impl Into<String>, message: impl Into<String>) -> IoError {
        IoError::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

/// RFC 6901 pointer for a serde path.
fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => {
                out.push('/');
                out.push_str(&key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => {}
        }
    }
    out
}

/// Deserializes any JSON payload, reporting failures with a JSON pointer.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let p = pointer(e.path());
        let inner = e.into_inner();
        IoError::schema(if p.is_empty() { "/".into() } else { p }, inner.to_string())
    })?;
    Ok(value)
}

pub fn to_document(d: &EnrichedKnotDiagram) -> EkdDocument {
    let p = d.parts();
    let point = |pt: &Point| PointDoc(pt.x.clone(), pt.y.clone());
    EkdDocument {
        format: FORMAT.into(),
        components: p.components,
        crossings: p
            .crossings
            .iter()
            .map(|c| CrossingDoc {
                darts: c.darts,
                quadrant_sign_0: c.quadrant_sign_0(),
            })
            .collect(),
        arcs: p
            .arcs
            .iter()
            .map(|a| ArcDoc {
                tail: a.tail,
                head: a.head,
                component: a.component,
                loop_faces: a.loop_faces.map(|(l, r)| [l, r]),
            })
            .collect(),
        faces: p
            .faces
            .iter()
            .map(|f| FaceDoc {
                boundary: f.boundary.clone(),
                area: f.area.clone(),
            })
            .collect(),
        outer_face: p.outer_face,
        layout: p.layout.as_ref().map(|l| LayoutDoc {
            crossings: l.crossings.iter().map(point).collect(),
            arcs: l
                .arcs
                .iter()
                .map(|w| w.iter().map(point).collect())
                .collect(),
        }),
    }
}

/// Structural decoding; semantic checks are left to the validator.
pub fn to_parts(doc: EkdDocument) -> Result<DiagramParts, IoError> {
    if doc.format != FORMAT {
        return Err(IoError::schema(
            "/format",
            format!("expected {FORMAT:?}, found {:?}", doc.format),
        ));
    }
    let nd = 4 * doc.crossings.len();
    let mut darts: Vec<Option<Dart>> = vec![None; nd];
    for (c, x) in doc.crossings.iter().enumerate() {
        for (slot, &id) in x.darts.iter().enumerate() {
            let at = format!("/crossings/{c}/darts/{slot}");
            match darts.get_mut(id) {
                None => {
                    return Err(IoError::schema(
                        at,
                        format!("dart {id} out of range 0..{nd}"),
                    ))
                }
                Some(Some(_)) => {
                    return Err(IoError::schema(at, format!("dart {id} listed twice")))
                }
                Some(slot_ref) => *slot_ref = Some(Dart { crossing: c, slot }),
            }
        }
    }
    let point = |p: PointDoc| Point::new(p.0, p.1);
    Ok(DiagramParts {
        components: doc.components,
        darts: darts
            .into_iter()
            .map(|d| d.expect("every id assigned"))
            .collect(),
        crossings: doc
            .crossings
            .into_iter()
            .map(|c| Crossing::new(c.darts, c.quadrant_sign_0))
            .collect(),
        arcs: doc
            .arcs
            .into_iter()
            .map(|a| Arc {
                tail: a.tail,
                head: a.head,
                component: a.component,
                loop_faces: a.loop_faces.map(|[l, r]| (l, r)),
            })
            .collect(),
        faces: doc
            .faces
            .into_iter()
            .map(|f| Face {
                boundary: f.boundary,
                area: f.area,
            })
            .collect(),
        outer_face: doc.outer_face,
        layout: doc.layout.map(|l| Layout {
            crossings: l.crossings.into_iter().map(point).collect(),
            arcs: l
                .arcs
                .into_iter()
                .map(|w| w.into_iter().map(point).collect())
                .collect(),
        }),
    })
}

/// Parses and validates an `ekd-v1` document.
pub fn parse(text: &str) -> Result<EnrichedKnotDiagram, IoError> {
    let doc: EkdDocument = from_json(text)?;
    EnrichedKnotDiagram::new(to_parts(doc)?).map_err(IoError::Validation)
}

pub fn parse_bytes(bytes: &[u8]) -> Result<EnrichedKnotDiagram, IoError> {
    let text =
        std::str::from_utf8(bytes).map_err(|e| IoError::schema("/", format!("not UTF-8: {e}")))?;
    parse(text)
}

/// Pretty JSON with a trailing newline.
pub fn serialize(d: &EnrichedKnotDiagram) -> String {
    to_json(&to_document(d))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{corpus, eight};
    use crate::canonical::canonical_form;
    use crate::rational::q;

    #[test]
    fn round_trip_corpus() {
        for (name, d) in corpus() {
            let text = serialize(&d);
            let back = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(canonical_form(&back), canonical_form(&d), "{name}");
            assert_eq!(back.parts(), d.parts(), "{name}");
            assert_eq!(serialize(&back), text, "{name}");
        }
    }

    #[test]
    fn truncated_is_schema_error() {
        let text = serialize(&eight(Sign::Plus, q(1)).unwrap());
        let cut = &text[..text.len() / 2];
        assert!(matches!(parse(cut), Err(IoError::Schema { .. })));
    }

    #[test]
    fn negative_area_is_validation_error() {
        let mut doc = to_document(&eight(Sign::Plus, q(1)).unwrap());
        let f = (0..doc.faces.len()).find(|&f| f != doc.outer_face).unwrap();
        doc.faces[f].area = Some(q(-1));
        let err = parse(&to_json(&doc)).unwrap_err();
        assert!(matches!(err, IoError::Validation(_)));
        assert!(err.to_string().contains("positive rationals"), "{err}");
    }

    #[test]
    fn pointers_name_the_offending_field() {
        let mut v: serde_json::Value =
            serde_json::from_str(&serialize(&eight(Sign::Plus, q(1)).unwrap())).unwrap();
        v["faces"][1]["area"] = "one".into();
        match parse(&v.to_string()) {
            Err(IoError::Schema { pointer, .. }) => assert_eq!(pointer, "/faces/1/area"),
            other => panic!("{other:?}"),
        }
        v["faces"][1]["area"] = "1/1".into();
        let dart = v["crossings"][0]["darts"][2].clone();
        v["crossings"][0]["darts"][2] = 9.into();
        match parse(&v.to_string()) {
            Err(IoError::Schema { pointer, .. }) => assert_eq!(pointer, "/crossings/0/darts/2"),
            other => panic!("{other:?}"),
        }
        v["crossings"][0]["darts"][2] = dart;
        v["format"] = "ekd-v0".into();
        match parse(&v.to_string()) {
            Err(IoError::Schema { pointer, .. }) => assert_eq!(pointer, "/format"),
            other => panic!("{other:?}"),
        }
    }
}
