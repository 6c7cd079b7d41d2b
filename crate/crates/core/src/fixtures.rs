//! Deterministic test surfaces.
//!
//! Grid vertex `(i, j)` of an `m × n` grid sits at
//! `(i + j/2 + (7k mod 11)/37, j + (5k mod 13)/41)` with `k = i + m·j`,
//! a sheared lattice with small counter-based perturbations.
//!
//! Klein seam convention: the top row is glued to the bottom row with the
//! column order reversed, so vertex `(i, n)` is identified with
//! `(-i mod m, 0)`. Columns are glued straight.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::affine::AffineFunction;
use crate::framework::{Framework, Point};
use crate::scalar::rational;
use crate::topology::{validate_surface, RawSurface};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("parameter {name} = {value} is below the minimum {min}")]
    ParameterTooSmall {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("parameter {name} = {value} is above the maximum {max}")]
    ParameterTooLarge {
        name: &'static str,
        value: usize,
        max: usize,
    },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {name} takes {expected} parameter(s), got {got}")]
    WrongParameterCount {
        name: String,
        expected: usize,
        got: usize,
    },
}

/// A named generator with its integer parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixtureSpec {
    pub name: String,
    pub parameters: Vec<u64>,
}

impl FixtureSpec {
    pub const NAMES: [&'static str; 6] = [
        "paper-example",
        "fan-disk",
        "grid-torus",
        "grid-klein",
        "mobius-strip",
        "random-disk",
    ];

    pub fn new(name: impl Into<String>, parameters: Vec<u64>) -> Self {
        FixtureSpec {
            name: name.into(),
            parameters,
        }
    }

    pub fn build(&self) -> Result<Framework<Rational>, FixtureError> {
        let arity = match self.name.as_str() {
            "paper-example" | "fan-disk" => 0,
            "mobius-strip" => 1,
            "grid-torus" | "grid-klein" | "random-disk" => 2,
            _ => return Err(FixtureError::UnknownFixture(self.name.clone())),
        };
        if self.parameters.len() != arity {
            return Err(FixtureError::WrongParameterCount {
                name: self.name.clone(),
                expected: arity,
                got: self.parameters.len(),
            });
        }
        let p = |i: usize| self.parameters[i] as usize;
        match self.name.as_str() {
            "paper-example" => Ok(paper_example()),
            "fan-disk" => Ok(fan_disk()),
            "grid-torus" => grid_torus(p(0), p(1)),
            "grid-klein" => grid_klein(p(0), p(1)),
            "mobius-strip" => mobius_strip(p(0)),
            _ => random_disk(self.parameters[0], p(1)),
        }
    }
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for p in &self.parameters {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

fn point(x: i64, y: i64) -> Point<Rational> {
    Point::new(rational(x, 1), rational(y, 1))
}

fn build(raw: RawSurface, positions: Vec<Point<Rational>>) -> Framework<Rational> {
    let s = validate_surface(&raw).expect("fixture complexes are valid");
    Framework::new(s, positions).expect("fixture positions are non-degenerate")
}

/// Nine quadrilaterals on nine vertices forming a torus.
pub fn paper_example() -> Framework<Rational> {
    let faces = [
        ("f0", ["p1", "p2", "p3", "p4"]),
        ("f1", ["p4", "p7", "p8", "p3"]),
        ("f2", ["p1", "p7", "p8", "p2"]),
        ("f3", ["p2", "p5", "p6", "p3"]),
        ("f4", ["p3", "p8", "p9", "p6"]),
        ("f5", ["p2", "p8", "p9", "p5"]),
        ("f6", ["p1", "p4", "p6", "p5"]),
        ("f7", ["p4", "p7", "p9", "p6"]),
        ("f8", ["p1", "p5", "p9", "p7"]),
    ];
    let mut raw = RawSurface::from_faces(faces.iter().map(|(f, vs)| (*f, vs.to_vec())));
    let coords = [
        ("p1", (0, 0)),
        ("p2", (4, 0)),
        ("p3", (5, 1)),
        ("p4", (1, 1)),
        ("p5", (0, 4)),
        ("p6", (1, 5)),
        ("p7", (-1, 2)),
        ("p8", (3, 2)),
        ("p9", (-1, 6)),
    ];
    raw.vertices = coords.iter().map(|(l, _)| l.to_string()).collect();
    build(raw, coords.iter().map(|&(_, (x, y))| point(x, y)).collect())
}

/// Reference height representatives of the worked torus example from
/// face `f0`, by face label, and the constant generating their periods.
pub fn paper_reference_heights() -> (
    Vec<(&'static str, AffineFunction<Rational>)>,
    AffineFunction<Rational>,
) {
    let af = |a, b, c| AffineFunction::new(rational(a, 1), rational(b, 1), rational(c, 1));
    let heights = vec![
        ("f0", af(0, 0, 0)),
        ("f1", af(0, 0, 0)),
        ("f2", af(0, 0, 0)),
        ("f3", af(0, 0, 0)),
        ("f4", af(0, 0, 0)),
        ("f5", af(0, 0, 0)),
        ("f6", af(8, -8, 0)),
        ("f7", af(-4, -8, 12)),
        ("f8", af(-16, -8, 0)),
    ];
    (heights, af(0, 0, 32))
}

/// Three triangles around an interior vertex `O`.
pub fn fan_disk() -> Framework<Rational> {
    let raw = RawSurface::from_faces([
        ("OAB", vec!["O", "A", "B"]),
        ("OBC", vec!["O", "B", "C"]),
        ("OCA", vec!["O", "C", "A"]),
    ]);
    build(
        raw,
        vec![point(1, 1), point(0, 0), point(3, 0), point(0, 3)],
    )
}

fn check_min(name: &'static str, value: usize, min: usize) -> Result<(), FixtureError> {
    if value < min {
        return Err(FixtureError::ParameterTooSmall { name, value, min });
    }
    Ok(())
}

fn grid(m: usize, n: usize, klein: bool) -> Result<Framework<Rational>, FixtureError> {
    check_min("m", m, 3)?;
    check_min("n", n, 3)?;
    let label = |i: usize, j: usize| format!("v{i}_{j}");
    let mut faces = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            let top = if j + 1 < n {
                [label((i + 1) % m, j + 1), label(i, j + 1)]
            } else if klein {
                [label((m - (i + 1) % m) % m, 0), label((m - i) % m, 0)]
            } else {
                [label((i + 1) % m, 0), label(i, 0)]
            };
            let [c, d] = top;
            faces.push((
                format!("q{i}_{j}"),
                vec![label(i, j), label((i + 1) % m, j), c, d],
            ));
        }
    }
    let s = validate_surface(&RawSurface::from_faces(faces)).expect("grid complexes are valid");
    let positions = s
        .vertex_labels()
        .iter()
        .map(|l| {
            let (i, j) = l[1..].split_once('_').expect("grid label");
            let (i, j): (i64, i64) = (
                i.parse().expect("grid label"),
                j.parse().expect("grid label"),
            );
            let k = i + m as i64 * j;
            Point::new(
                rational(i, 1) + rational(j, 2) + rational((7 * k) % 11, 37),
                rational(j, 1) + rational((5 * k) % 13, 41),
            )
        })
        .collect();
    Ok(Framework::new(s, positions).expect("grid positions are non-degenerate"))
}

/// `m × n` quadrangulated torus.
pub fn grid_torus(m: usize, n: usize) -> Result<Framework<Rational>, FixtureError> {
    grid(m, n, false)
}

/// `m × n` quadrangulated Klein bottle (see the module notes for the seam).
pub fn grid_klein(m: usize, n: usize) -> Result<Framework<Rational>, FixtureError> {
    grid(m, n, true)
}

/// A band of `m` quadrilaterals closed with a half twist.
pub fn mobius_strip(m: usize) -> Result<Framework<Rational>, FixtureError> {
    check_min("m", m, 3)?;
    let (t, b) = (|i: usize| format!("t{i}"), |i: usize| format!("b{i}"));
    let mut faces: Vec<(String, Vec<String>)> = (0..m - 1)
        .map(|i| (format!("q{i}"), vec![t(i), t(i + 1), b(i + 1), b(i)]))
        .collect();
    faces.push((format!("q{}", m - 1), vec![t(m - 1), b(0), t(0), b(m - 1)]));
    let s = validate_surface(&RawSurface::from_faces(faces)).expect("strip complexes are valid");
    let positions = s
        .vertex_labels()
        .iter()
        .map(|l| {
            let i: i64 = l[1..].parse().expect("strip label");
            let y = if l.starts_with('t') { 3 } else { 0 };
            Point::new(
                rational(2 * i, 1) + rational(i % 3, 5),
                rational(y, 1) + rational(i % 2, 7),
            )
        })
        .collect();
    Ok(Framework::new(s, positions).expect("strip positions are non-degenerate"))
}

/// Random triangulation of the triangle `A = (0,0)`, `B = (60,0)`,
/// `C = (0,60)` with `vertices` vertices in total (4 to 12), built by
/// repeatedly splitting a random triangle at a random interior point.
pub fn random_disk(seed: u64, vertices: usize) -> Result<Framework<Rational>, FixtureError> {
    check_min("vertices", vertices, 4)?;
    if vertices > 12 {
        return Err(FixtureError::ParameterTooLarge {
            name: "vertices",
            value: vertices,
            max: 12,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos = vec![point(0, 0), point(60, 0), point(0, 60)];
    let mut tris: Vec<[usize; 3]> = vec![[0, 1, 2]];
    while pos.len() < vertices {
        let t = rng.gen_range(0..tris.len());
        let [a, b, c] = tris[t];
        let wts: [i64; 3] = [
            rng.gen_range(1..=6),
            rng.gen_range(1..=6),
            rng.gen_range(1..=6),
        ];
        let total = rational(wts.iter().sum(), 1);
        let mix = |sel: fn(&Point<Rational>) -> &Rational| {
            (rational(wts[0], 1) * sel(&pos[a]).clone()
                + rational(wts[1], 1) * sel(&pos[b]).clone()
                + rational(wts[2], 1) * sel(&pos[c]).clone())
                / total.clone()
        };
        let p = Point::new(mix(|p| &p.x), mix(|p| &p.y));
        let v = pos.len();
        pos.push(p);
        tris[t] = [a, b, v];
        tris.push([b, c, v]);
        tris.push([c, a, v]);
    }
    let names = |i: usize| format!("u{i}");
    let raw = RawSurface::from_faces(tris.iter().enumerate().map(|(k, t)| {
        (
            format!("t{k}"),
            t.iter().map(|&v| names(v)).collect::<Vec<_>>(),
        )
    }));
    let s = validate_surface(&raw).expect("split triangulations are valid");
    let positions = s
        .vertex_labels()
        .iter()
        .map(|l| pos[l[1..].parse::<usize>().expect("disk label")].clone())
        .collect();
    Ok(Framework::new(s, positions).expect("interior points are distinct"))
}
