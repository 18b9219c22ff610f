//! The two input dialects: polytope files and stacky-fan files, told apart
//! by their `vertices` or `rays` key.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{simplicialize, stacky_fan_of_polytope, RawFan, StackyFan};
use crate::polytope::{LatticePolytope, Point};
use crate::reciprocity::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Point>,
    #[serde(default)]
    pub base_point: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayEntry {
    pub v: Point,
    pub a: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<RayEntry>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationFile {
    pub points: Vec<Point>,
    pub simplices: Vec<Vec<usize>>,
}

/// A parsed input with the fan it determines.
#[derive(Clone, Debug)]
pub struct Input {
    pub polytope: Option<LatticePolytope>,
    pub fan: StackyFan,
}

fn read_json(path: &Path) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn decode<T: for<'de> Deserialize<'de>>(value: serde_json::Value, path: &Path) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn fan_from_file(f: &FanFile) -> Result<StackyFan> {
    let raw = RawFan {
        rank: f.rank,
        rays: f.rays.iter().map(|r| r.v.clone()).collect(),
        multipliers: f.rays.iter().map(|r| r.a).collect(),
        max_cones: f.max_cones.clone(),
    };
    if let Some(r) = raw.rays.iter().find(|v| v.len() != f.rank) {
        return Err(Error::Parse(format!("ray {r:?} does not have length {}", f.rank)));
    }
    if let Some(c) = raw.max_cones.iter().find(|c| c.iter().any(|&i| i >= raw.rays.len())) {
        return Err(Error::Parse(format!("cone {c:?} names a missing ray")));
    }
    simplicialize(&raw)
}

/// Reads either dialect. `base_point` overrides the one in a polytope file.
pub fn read_input(path: &Path, base_point: Option<&[i64]>) -> Result<Input> {
    let value = read_json(path)?;
    let has = |k: &str| value.get(k).is_some();
    if has("vertices") {
        let file: PolytopeFile = decode(value, path)?;
        if let Some(v) = file.vertices.iter().find(|v| v.len() != file.dim) {
            return Err(Error::Parse(format!("vertex {v:?} does not have length {}", file.dim)));
        }
        let p = LatticePolytope::new(file.dim, &file.vertices)?;
        let alpha = base_point
            .map(<[i64]>::to_vec)
            .or(file.base_point)
            .unwrap_or_else(|| vec![0; file.dim]);
        let fan = stacky_fan_of_polytope(&p, &alpha)?;
        Ok(Input {
            polytope: Some(p),
            fan,
        })
    } else if has("rays") {
        if base_point.is_some() {
            return Err(Error::Parse("--base-point applies to polytope files only".into()));
        }
        let file: FanFile = decode(value, path)?;
        Ok(Input {
            polytope: None,
            fan: fan_from_file(&file)?,
        })
    } else {
        Err(Error::Parse(format!(
            "{}: expected a \"vertices\" or \"rays\" key",
            path.display()
        )))
    }
}

pub fn read_triangulation(path: &Path) -> Result<Triangulation> {
    let file: TriangulationFile = decode(read_json(path)?, path)?;
    Ok(Triangulation {
        points: file.points,
        simplices: file.simplices,
    })
}

/// `x,y,...` as integers.
pub fn parse_point(s: &str) -> Result<Point> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("coordinate {x:?}: {e}")))
        })
        .collect()
}
