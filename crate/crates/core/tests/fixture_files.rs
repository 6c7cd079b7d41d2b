//! Checked-in fixture files match the generators exactly. Run with
//! `CREMONA_BLESS=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use cremona::fixtures::{paper_example, paper_reference_heights};
use cremona::{
    parse_surface, recover_stress, serialize_surface, write_stress, FixtureSpec, SurfaceFile,
};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn check(name: &str, expected: &str) {
    let path = fixture_dir().join(name);
    if std::env::var_os("CREMONA_BLESS").is_some() {
        fs::write(&path, expected).unwrap();
    }
    let actual = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} is stale");
}

const SURFACES: [(&str, &str, &[u64]); 8] = [
    ("paper-example.srf", "paper-example", &[]),
    ("fan-disk.srf", "fan-disk", &[]),
    ("grid-torus-3-3.srf", "grid-torus", &[3, 3]),
    ("grid-torus-4-4.srf", "grid-torus", &[4, 4]),
    ("grid-klein-3-3.srf", "grid-klein", &[3, 3]),
    ("grid-klein-4-4.srf", "grid-klein", &[4, 4]),
    ("mobius-strip-5.srf", "mobius-strip", &[5]),
    ("random-disk-7-10.srf", "random-disk", &[7, 10]),
];

#[test]
fn surface_files_match_generators() {
    for (file, name, params) in SURFACES {
        let spec = FixtureSpec::new(name, params.to_vec());
        let text = serialize_surface(&SurfaceFile {
            name: spec.to_string().replace(' ', "-"),
            framework: spec.build().unwrap(),
            stress: None,
        });
        check(file, &text);
        assert_eq!(serialize_surface(&parse_surface(&text).unwrap()), text);
    }
}

#[test]
fn golden_stress_file_matches_recovery() {
    let fw = paper_example();
    let (table, _) = paper_reference_heights();
    let heights: Vec<_> = table.into_iter().map(|(_, h)| h).collect();
    let base = fw.complex().face_by_label("f0").unwrap();
    let w = recover_stress(&fw, base, &heights).unwrap();
    check("paper.stress", &write_stress(&fw, &w));
}
