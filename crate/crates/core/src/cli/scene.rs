//! JSON scene files: named cones, unions of cones and polytopes.
//!
//! ```json
//! {
//!   "version": 1,
//!   "objects": [
//!     { "name": "quadrant", "kind": "cone", "ambient_dim": 2,
//!       "data": { "generators": [[1, 0], [0, 1]] } },
//!     { "name": "pair", "kind": "union", "ambient_dim": 2,
//!       "data": { "members": [[[1, 0], [0, 1]], [[-1, 0], [0, -1]]] } },
//!     { "name": "square", "kind": "polytope", "ambient_dim": 2,
//!       "data": { "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]] } }
//!   ]
//! }
//! ```

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numkit::Vector;
use crate::polycone::{homogenize, ConvexCone, PolyUnion, Polytope, DEFAULT_TOL};

pub const SCENE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub version: u32,
    pub objects: Vec<SceneObject>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectKind {
    Cone,
    Union,
    Polytope,
}

impl ObjectKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ObjectKind::Cone => "cone",
            ObjectKind::Union => "union",
            ObjectKind::Polytope => "polytope",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneObject {
    pub name: String,
    pub kind: ObjectKind,
    pub ambient_dim: usize,
    pub data: ObjectData,
}

/// A validated object.
#[derive(Clone, Debug)]
pub enum Geometry {
    Cone(ConvexCone),
    Union(PolyUnion),
    Polytope(Polytope),
}

#[derive(Clone, Debug)]
pub struct LoadedObject {
    pub name: String,
    pub kind: ObjectKind,
    pub ambient_dim: usize,
    pub geometry: Geometry,
}

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}:{line}:{column}: {message}")]
    Syntax { path: PathBuf, line: usize, column: usize, message: String },

    #[error("{path}:{line}: object {name:?}: {message}")]
    Invalid { path: PathBuf, line: usize, name: String, message: String },

    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },
}

impl SceneFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scene serializes");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<(), SceneError> {
        std::fs::write(path, self.to_json()).map_err(|source| SceneError::Io { path: path.to_path_buf(), source })
    }
}

/// 1-based line of the `nth` `"name": <name>` entry (0-based `nth`), or 1
/// when it cannot be found.
fn line_of_name(text: &str, name: &str, nth: usize) -> usize {
    let mut left = nth;
    let quoted = serde_json::to_string(name).expect("string serializes");
    let mut from = 0;
    while let Some(off) = text[from..].find("\"name\"") {
        let at = from + off;
        let rest = text[at + 6..].trim_start();
        if let Some(rest) = rest.strip_prefix(':') {
            if rest.trim_start().starts_with(&quoted) {
                if left == 0 {
                    return text[..at].matches('\n').count() + 1;
                }
                left -= 1;
            }
        }
        from = at + 6;
    }
    1
}

fn to_vectors(rows: &[Vec<f64>], n: usize, what: &str) -> Result<Vec<Vector>, String> {
    rows.iter()
        .enumerate()
        .map(|(k, r)| {
            if r.len() != n {
                return Err(format!("{what} {k} has {} coordinates, expected {n}", r.len()));
            }
            Vector::new(r.clone()).map_err(|e| format!("{what} {k}: {e}"))
        })
        .collect()
}

fn build(obj: &SceneObject) -> Result<Geometry, String> {
    let n = obj.ambient_dim;
    if n == 0 {
        return Err("ambient_dim must be positive".into());
    }
    let d = &obj.data;
    let only = |field: &str| -> Result<(), String> {
        let present = [
            ("generators", d.generators.is_some()),
            ("members", d.members.is_some()),
            ("vertices", d.vertices.is_some()),
        ];
        match present.iter().find(|(f, p)| *p && *f != field) {
            Some((f, _)) => Err(format!("field {f:?} does not belong to kind {:?}", obj.kind.as_str())),
            None => Ok(()),
        }
    };
    match obj.kind {
        ObjectKind::Cone => {
            only("generators")?;
            let g = d.generators.as_ref().ok_or("cone needs data.generators")?;
            let gens = to_vectors(g, n, "generator")?;
            Ok(Geometry::Cone(cone_of(&gens, n)?))
        }
        ObjectKind::Union => {
            only("members")?;
            let ms = d.members.as_ref().ok_or("union needs data.members")?;
            let cones = ms
                .iter()
                .enumerate()
                .map(|(k, m)| cone_of(&to_vectors(m, n, "generator")?, n).map_err(|e| format!("member {k}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            let u = PolyUnion::new(cones).map_err(|e| e.to_string())?;
            u.intersection_terms().map_err(|e| e.to_string())?;
            Ok(Geometry::Union(u))
        }
        ObjectKind::Polytope => {
            only("vertices")?;
            let v = d.vertices.as_ref().ok_or("polytope needs data.vertices")?;
            let verts = to_vectors(v, n, "vertex")?;
            Ok(Geometry::Polytope(homogenize(&verts).map_err(|e| e.to_string())?))
        }
    }
}

fn cone_of(gens: &[Vector], n: usize) -> Result<ConvexCone, String> {
    if gens.is_empty() {
        return Ok(ConvexCone::zero(n));
    }
    ConvexCone::from_generators(gens, n, DEFAULT_TOL).map_err(|e| e.to_string())
}

/// Parses and validates a scene given as text; `path` is used in messages.
pub fn parse_scene(text: &str, path: &Path) -> Result<(SceneFile, Vec<LoadedObject>), SceneError> {
    let scene: SceneFile = serde_json::from_str(text).map_err(|e| SceneError::Syntax {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    if scene.version != SCENE_VERSION {
        return Err(SceneError::File {
            path: path.to_path_buf(),
            message: format!("unsupported version {}, expected {SCENE_VERSION}", scene.version),
        });
    }
    let mut seen: HashMap<&str, usize> = HashMap::new();
    let mut loaded = Vec::with_capacity(scene.objects.len());
    for obj in &scene.objects {
        let count = seen.entry(obj.name.as_str()).or_insert(0);
        let nth = *count;
        *count += 1;
        let invalid = |message: String| SceneError::Invalid {
            path: path.to_path_buf(),
            line: line_of_name(text, &obj.name, nth),
            name: obj.name.clone(),
            message,
        };
        if nth > 0 {
            return Err(invalid("duplicate name".into()));
        }
        let geometry = build(obj).map_err(invalid)?;
        loaded.push(LoadedObject { name: obj.name.clone(), kind: obj.kind, ambient_dim: obj.ambient_dim, geometry });
    }
    Ok((scene, loaded))
}

pub fn load_scene(path: &Path) -> Result<(SceneFile, Vec<LoadedObject>), SceneError> {
    let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io { path: path.to_path_buf(), source })?;
    parse_scene(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{
  "version": 1,
  "objects": [
    { "name": "q", "kind": "cone", "ambient_dim": 2, "data": { "generators": [[1, 0], [0, 1]] } },
    { "name": "pair", "kind": "union", "ambient_dim": 2,
      "data": { "members": [[[1, 0], [0, 1]], [[-1, 0], [0, -1]]] } },
    { "name": "sq", "kind": "polytope", "ambient_dim": 2,
      "data": { "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]] } }
  ]
}"#;

    fn parse(text: &str) -> Result<(SceneFile, Vec<LoadedObject>), SceneError> {
        parse_scene(text, Path::new("scene.json"))
    }

    #[test]
    fn loads_all_kinds() {
        let (_, objs) = parse(GOOD).unwrap();
        assert_eq!(objs.len(), 3);
        assert!(matches!(objs[0].geometry, Geometry::Cone(_)));
        assert!(matches!(objs[1].geometry, Geometry::Union(_)));
        assert!(matches!(objs[2].geometry, Geometry::Polytope(_)));
    }

    #[test]
    fn round_trip_is_identical() {
        let (scene, _) = parse(GOOD).unwrap();
        let text = scene.to_json();
        let (again, _) = parse(&text).unwrap();
        assert_eq!(again, scene);
        assert_eq!(again.to_json(), text);
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse("{\n  \"version\": 1,\n  \"objects\": [\n}").unwrap_err();
        match err {
            SceneError::Syntax { line, .. } => assert_eq!(line, 4),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn invalid_object_points_at_its_line() {
        let bad = GOOD.replace("[[0, 0], [1, 0], [0, 1], [1, 1]]", "[[0, 0], [1, 0, 2]]");
        let err = parse(&bad).unwrap_err();
        match &err {
            SceneError::Invalid { line, name, .. } => {
                assert_eq!(*line, 7);
                assert_eq!(name, "sq");
            }
            e => panic!("unexpected {e}"),
        }
        assert!(err.to_string().starts_with("scene.json:7:"));
    }

    #[test]
    fn duplicate_names_rejected() {
        let bad = GOOD.replace("\"pair\"", "\"q\"");
        assert!(matches!(parse(&bad), Err(SceneError::Invalid { line: 5, .. })));
    }

    #[test]
    fn wrong_fields_rejected() {
        let bad = GOOD.replace("\"generators\": [[1, 0], [0, 1]]", "\"vertices\": [[1, 0]]");
        assert!(matches!(parse(&bad), Err(SceneError::Invalid { line: 4, .. })));
        let bad = GOOD.replace("\"version\": 1", "\"version\": 2");
        assert!(matches!(parse(&bad), Err(SceneError::File { .. })));
        let bad = GOOD.replace("[[1, 0], [0, 1]] } }", "[[0, 0], [0, 1]] } }");
        assert!(matches!(parse(&bad), Err(SceneError::Invalid { .. })));
    }

    #[test]
    fn name_lookup_skips_prefixes() {
        let text = "{\"name\": \"ab\",\n\"name\": \"a\"}";
        assert_eq!(line_of_name(text, "a", 0), 2);
        assert_eq!(line_of_name(text, "ab", 0), 1);
        assert_eq!(line_of_name(text, "ab", 1), 1);
    }
}
