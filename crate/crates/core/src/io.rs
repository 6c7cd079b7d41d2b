//! Line-oriented surface files and Wavefront OBJ export.
//!
//! ```text
//! # comment
//! surface <name>
//! vertex <id> <x> <y>
//! face <id> : <v1> <v2> ... <vk>
//! stress <vi> <vj> <w>
//! ```
//!
//! Numbers are exact rationals written `[-]digits` or `[-]digits/digits`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::framework::{Framework, Point, StressError, StressVector};
use crate::lifting::LiftingResult;
use crate::scalar::Scalar;
use crate::topology::{validate_surface, RawSurface, TopologyError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown vertex {vertex}")]
    UnknownVertexRef { line: usize, vertex: String },
    #[error("line {line}: duplicate {kind} {id}")]
    DuplicateId {
        line: usize,
        kind: &'static str,
        id: String,
    },
    #[error("line {line}: {a}-{b} is not an edge")]
    UnknownEdge { line: usize, a: String, b: String },
    #[error("invalid surface: {0}")]
    Validation(#[from] TopologyError),
    #[error("invalid framework: {0}")]
    Framework(#[from] StressError),
    #[error("lifting has {got} face heights, the surface has {expected} faces")]
    MissingFaceHeight { expected: usize, got: usize },
}

/// A parsed surface file.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceFile {
    pub name: String,
    pub framework: Framework<Rational>,
    pub stress: Option<StressVector<Rational>>,
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `[-]digits` or `[-]digits/digits` with a positive denominator.
pub fn parse_rational(token: &str) -> Option<Rational> {
    let body = token.strip_prefix('-').unwrap_or(token);
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    if !is_digits(numer) || !is_digits(denom) {
        return None;
    }
    let mut n: BigInt = numer.parse().ok()?;
    let d: BigInt = denom.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    if token.starts_with('-') {
        n = -n;
    }
    Some(Rational::new(n, d))
}

fn rational_at(line: usize, token: &str) -> Result<Rational, FormatError> {
    parse_rational(token).ok_or_else(|| parse_error(line, format!("malformed rational {token:?}")))
}

/// Records with their 1-based line numbers, comments and blanks removed.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split_once('#').map_or(raw, |(c, _)| c);
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

type StressRecord = (usize, String, String, Rational);

fn stress_record(line: usize, tokens: &[&str]) -> Result<StressRecord, FormatError> {
    match tokens {
        [_, a, b, w] => Ok((line, a.to_string(), b.to_string(), rational_at(line, w)?)),
        _ => Err(parse_error(line, "expected `stress <vi> <vj> <w>`")),
    }
}

fn apply_stress(
    fw: &Framework<Rational>,
    entries: Vec<StressRecord>,
) -> Result<StressVector<Rational>, FormatError> {
    let s = fw.complex();
    let mut w = StressVector::zero(s.edge_count());
    let mut seen = vec![false; s.edge_count()];
    for (line, a, b, weight) in entries {
        let lookup = |v: &str| {
            s.vertex_by_label(v)
                .ok_or_else(|| FormatError::UnknownVertexRef {
                    line,
                    vertex: v.to_string(),
                })
        };
        let (va, vb) = (lookup(&a)?, lookup(&b)?);
        let e = s
            .edge_between(va, vb)
            .ok_or_else(|| FormatError::UnknownEdge {
                line,
                a: a.clone(),
                b: b.clone(),
            })?;
        if std::mem::replace(&mut seen[e.0], true) {
            return Err(FormatError::DuplicateId {
                line,
                kind: "stress on edge",
                id: format!("{a}-{b}"),
            });
        }
        w.set_weight(e, weight);
    }
    Ok(w)
}

pub fn parse_surface(text: &str) -> Result<SurfaceFile, FormatError> {
    let mut name = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut positions: HashMap<String, Point<Rational>> = HashMap::new();
    let mut faces: Vec<(String, Vec<String>)> = Vec::new();
    let mut face_ids: HashMap<String, usize> = HashMap::new();
    let mut stresses = Vec::new();

    for (line, tokens) in records(text) {
        match tokens[0] {
            "surface" => {
                if name.is_some() {
                    return Err(parse_error(line, "second `surface` header"));
                }
                if tokens.len() != 2 {
                    return Err(parse_error(line, "expected `surface <name>`"));
                }
                name = Some(tokens[1].to_string());
            }
            _ if name.is_none() => {
                return Err(parse_error(line, "file must start with `surface <name>`"))
            }
            "vertex" => {
                let [_, id, x, y] = tokens[..] else {
                    return Err(parse_error(line, "expected `vertex <id> <x> <y>`"));
                };
                let p = Point::new(rational_at(line, x)?, rational_at(line, y)?);
                if positions.insert(id.to_string(), p).is_some() {
                    return Err(FormatError::DuplicateId {
                        line,
                        kind: "vertex",
                        id: id.to_string(),
                    });
                }
                vertices.push(id.to_string());
            }
            "face" => {
                if tokens.len() < 3 || tokens[2] != ":" {
                    return Err(parse_error(line, "expected `face <id> : <v1> ... <vk>`"));
                }
                let cycle = &tokens[3..];
                if cycle.len() < 3 {
                    return Err(parse_error(
                        line,
                        format!("face has {} vertices, need at least 3", cycle.len()),
                    ));
                }
                for v in cycle {
                    if !positions.contains_key(*v) {
                        return Err(FormatError::UnknownVertexRef {
                            line,
                            vertex: v.to_string(),
                        });
                    }
                }
                if face_ids
                    .insert(tokens[1].to_string(), faces.len())
                    .is_some()
                {
                    return Err(FormatError::DuplicateId {
                        line,
                        kind: "face",
                        id: tokens[1].to_string(),
                    });
                }
                faces.push((
                    tokens[1].to_string(),
                    cycle.iter().map(|v| v.to_string()).collect(),
                ));
            }
            "stress" => stresses.push(stress_record(line, &tokens)?),
            other => return Err(parse_error(line, format!("unknown directive {other:?}"))),
        }
    }

    let name = name.ok_or_else(|| parse_error(0, "missing `surface <name>` header"))?;
    let complex = validate_surface(&RawSurface { vertices, faces })?;
    let framework = Framework::from_labeled(complex, &positions)?;
    let stress = if stresses.is_empty() {
        None
    } else {
        Some(apply_stress(&framework, stresses)?)
    };
    Ok(SurfaceFile {
        name,
        framework,
        stress,
    })
}

/// Parses a file of `stress` records against `fw`. Unlisted edges get
/// weight zero.
pub fn parse_stress(
    fw: &Framework<Rational>,
    text: &str,
) -> Result<StressVector<Rational>, FormatError> {
    let mut entries = Vec::new();
    for (line, tokens) in records(text) {
        match tokens[0] {
            "stress" => entries.push(stress_record(line, &tokens)?),
            other => {
                return Err(parse_error(
                    line,
                    format!("unknown directive {other:?} in stress file"),
                ))
            }
        }
    }
    apply_stress(fw, entries)
}

/// One `stress` record per edge, in edge order.
pub fn write_stress<T: Scalar>(fw: &Framework<T>, w: &StressVector<T>) -> String {
    let s = fw.complex();
    let mut out = String::new();
    for e in s.edge_ids() {
        let (a, b) = s.edge(e).ends;
        let _ = writeln!(
            out,
            "stress {} {} {}",
            s.vertex_label(a),
            s.vertex_label(b),
            w.weight(e)
        );
    }
    out
}

pub fn serialize_surface(file: &SurfaceFile) -> String {
    let fw = &file.framework;
    let s = fw.complex();
    let mut out = format!("surface {}\n", file.name);
    for v in s.vertices() {
        let p = fw.position(v);
        let _ = writeln!(out, "vertex {} {} {}", s.vertex_label(v), p.x, p.y);
    }
    for f in s.face_ids() {
        let cycle: Vec<&str> = s.face(f).iter().map(|&v| s.vertex_label(v)).collect();
        let _ = writeln!(out, "face {} : {}", s.face_label(f), cycle.join(" "));
    }
    if let Some(w) = &file.stress {
        out.push_str(&write_stress(fw, w));
    }
    out
}

/// Rounds to `digits` significant digits and prints the shortest decimal
/// that reads back as the rounded value.
pub fn format_significant(value: f64, digits: usize) -> String {
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), value)
        .parse()
        .expect("formatted float parses");
    if rounded == 0.0 {
        "0".to_string()
    } else {
        rounded.to_string()
    }
}

pub const DEFAULT_OBJ_PRECISION: usize = 12;

/// One OBJ vertex per face corner, lifted by that face's height; faces do
/// not share vertices.
pub fn export_obj<T: Scalar>(
    fw: &Framework<T>,
    lifting: &LiftingResult<T>,
    precision: usize,
) -> Result<String, FormatError> {
    let s = fw.complex();
    if lifting.heights.len() != s.face_count() {
        return Err(FormatError::MissingFaceHeight {
            expected: s.face_count(),
            got: lifting.heights.len(),
        });
    }
    let num = |x: &T| format_significant(x.to_f64(), precision);
    let mut out = format!("# base face {}\n", s.face_label(lifting.base_face));
    for f in s.face_ids() {
        let h = lifting.height(f);
        for &v in s.face(f) {
            let p = fw.position(v);
            let _ = writeln!(out, "v {} {} {}", num(&p.x), num(&p.y), num(&h.eval_at(p)));
        }
    }
    let mut next = 1;
    for f in s.face_ids() {
        let k = s.face(f).len();
        let refs: Vec<String> = (next..next + k).map(|i| i.to_string()).collect();
        let _ = writeln!(out, "f {}", refs.join(" "));
        next += k;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    const FAN: &str = "surface fan
vertex O 1 1
vertex A 0 0
vertex B 3 0
vertex C 0 3
face OAB : O A B
face OBC : O B C
face OCA : O C A
";

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-1"), Some(rational(-1, 1)));
        assert_eq!(parse_rational("1/3"), Some(rational(1, 3)));
        assert_eq!(parse_rational("-6/4"), Some(rational(-3, 2)));
        for bad in ["", "-", "1/0", "1/-3", "+2", "1.5", "a", "1/", "/2", "--1"] {
            assert_eq!(parse_rational(bad), None, "{bad:?}");
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let file = parse_surface(FAN).unwrap();
        assert_eq!(serialize_surface(&file), FAN);
        let mut with_stress = file.clone();
        with_stress.stress = Some(StressVector::zero(6));
        let text = serialize_surface(&with_stress);
        assert_eq!(serialize_surface(&parse_surface(&text).unwrap()), text);
    }

    #[test]
    fn comments_and_fractions() {
        let text = "# header\n\nsurface t # trailing\nvertex a 1/3 0\nvertex b 1 0\nvertex c 0 1\nface f : a b c\n";
        let file = parse_surface(text).unwrap();
        let s = file.framework.complex();
        assert_eq!(
            file.framework.position(s.vertex_by_label("a").unwrap()).x,
            rational(1, 3)
        );
    }

    #[test]
    fn errors_carry_lines() {
        let short = "surface t\nvertex a 0 0\nvertex b 1 0\nface f : a b\n";
        assert!(matches!(
            parse_surface(short),
            Err(FormatError::Parse { line: 4, .. })
        ));
        let unknown = "surface t\nvertex a 0 0\nface f : a b c\n";
        assert!(matches!(
            parse_surface(unknown),
            Err(FormatError::UnknownVertexRef { line: 3, .. })
        ));
        let dup = "surface t\nvertex a 0 0\nvertex a 1 0\n";
        assert!(matches!(
            parse_surface(dup),
            Err(FormatError::DuplicateId { line: 3, .. })
        ));
        let directive = "surface t\nedge a b\n";
        assert!(matches!(
            parse_surface(directive),
            Err(FormatError::Parse { line: 2, .. })
        ));
        let headless = "vertex a 0 0\n";
        assert!(matches!(
            parse_surface(headless),
            Err(FormatError::Parse { line: 1, .. })
        ));
        let non_edge = format!("{FAN}stress A O 1\nstress B A 2\nstress O A 1\n");
        assert!(matches!(
            parse_surface(&non_edge),
            Err(FormatError::DuplicateId { line: 11, .. })
        ));
    }

    #[test]
    fn stress_files() {
        let fw = parse_surface(FAN).unwrap().framework;
        let w = parse_stress(&fw, "stress O A 1\nstress B O 1\n# rim\nstress C O 1\nstress A B -1/3\nstress B C -1/3\nstress C A -1/3\n")
            .unwrap();
        assert!(crate::framework::is_self_stress(&fw, &w).unwrap());
        assert_eq!(parse_stress(&fw, &write_stress(&fw, &w)).unwrap(), w);
        assert!(matches!(
            parse_stress(&fw, "stress A A 1\n"),
            Err(FormatError::UnknownEdge { .. })
        ));
        assert!(matches!(
            parse_stress(&fw, "vertex A 0 0\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(-0.0, 12), "0");
        assert_eq!(format_significant(12.0, 12), "12");
        assert_eq!(format_significant(2.0 / 3.0, 3), "0.667");
    }
}
