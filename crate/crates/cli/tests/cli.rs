use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use bbhull::format::{parse_poly, write_poly, PolyFile};
use bbhull_core::generators::dwarfed_cube;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bbhull-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn bbhull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbhull")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dwarfed_cube_round_trips() {
    let g = dwarfed_cube(3).unwrap();
    let file = PolyFile::from_points(3, g.points.clone()).with_halfspaces(g.inequalities.as_ref().unwrap());
    let text = write_poly(&file);
    let back = parse_poly(&text).unwrap();
    assert_eq!(back.points.as_ref().unwrap(), &g.points);
    assert_eq!(back, file);
    assert_eq!(write_poly(&back), text);
}

#[test]
fn canonicalization_is_idempotent() {
    let messy = "# comment\r\nPOLY 2\r\nH 1\n  6/4   -2/2  -03 # trailing\nV 2\n2/4 0\n-0 10/5\n";
    let once = write_poly(&parse_poly(messy).unwrap());
    assert_eq!(once, "POLY 2\nV 2\n1/2 0\n0 2\nH 1\n3/2 -1 -3\n");
    assert_eq!(write_poly(&parse_poly(&once).unwrap()), once);
}

#[test]
fn generate_then_hull_reproduces_the_facets() {
    let dir = scratch("generate");
    let poly = dir.join("g.poly");
    let o = bbhull(&["generate", "dwarfed-polygon-product", "--d", "4", "--s", "3", "-o", poly.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let generated = parse_poly(&fs::read_to_string(&poly).unwrap()).unwrap();

    let o = bbhull(&["hull", poly.to_str().unwrap(), "--order", "random", "--seed", "9", "--stats"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# facets 7\n"), "{text}");
    assert!(text.contains("# vertices 11\n"), "{text}");
    let hulled = parse_poly(&text).unwrap();
    let sorted = |f: &PolyFile| {
        let mut v = f.halfspaces().unwrap().unwrap();
        v.sort();
        v
    };
    assert_eq!(sorted(&hulled), sorted(&generated));
    assert_eq!(hulled.points.unwrap().len(), 11);
}

#[test]
fn lower_dimensional_hull_reports_equations() {
    let dir = scratch("flat");
    let poly = dir.join("flat.poly");
    fs::write(&poly, "POLY 3\nV 4\n0 0 1\n1 0 1\n1 1 1\n0 1 1\n").unwrap();
    let o = bbhull(&["hull", poly.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("H 6\n"), "{text}");
    assert!(text.contains("\n-1 0 0 1\n") && text.contains("\n1 0 0 -1\n"), "{text}");
}

#[test]
fn triangulation_validates_and_corruption_is_caught() {
    let dir = scratch("validate");
    let poly = dir.join("cube.poly");
    let tri = dir.join("cube.tri");
    assert!(bbhull(&["generate", "cube", "--d", "3", "-o", poly.to_str().unwrap()]).status.success());
    let o = bbhull(&["hull", poly.to_str().unwrap(), "--order", "lex", "--triangulation-out", tri.to_str().unwrap()]);
    assert!(o.status.success());

    let o = bbhull(&["validate", poly.to_str().unwrap(), "--triangulation", tri.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("valid\n"));

    // drop the last cell
    let text = fs::read_to_string(&tri).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let n: usize = lines[1][2..].parse().unwrap();
    let header = format!("T {}", n - 1);
    lines[1] = &header;
    lines.pop();
    fs::write(&tri, lines.join("\n") + "\n").unwrap();
    let o = bbhull(&["validate", poly.to_str().unwrap(), "--triangulation", tri.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("cover_ok false"));
}

#[test]
fn fvector_of_the_cube() {
    let dir = scratch("fvector");
    let poly = dir.join("cube.poly");
    assert!(bbhull(&["generate", "cube", "--d", "4", "-o", poly.to_str().unwrap()]).status.success());
    let o = bbhull(&["fvector", poly.to_str().unwrap()]);
    assert_eq!(stdout(&o), "16 32 24 8\n");
}

#[test]
fn polar_of_the_cube_is_the_cross_polytope() {
    let dir = scratch("polar");
    let poly = dir.join("cube.poly");
    fs::write(&poly, "POLY 3\nH 6\n1 1 0 0\n1 -1 0 0\n1 0 1 0\n1 0 -1 0\n1 0 0 1\n1 0 0 -1\n").unwrap();
    let o = bbhull(&["polar", poly.to_str().unwrap(), "--interior", "0,0,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "POLY 3\nV 6\n-1 0 0\n1 0 0\n0 -1 0\n0 1 0\n0 0 -1\n0 0 1\n");

    let o = bbhull(&["polar", poly.to_str().unwrap(), "--interior", "1,0,0"]);
    assert_eq!(o.status.code(), Some(3), "boundary point is not interior");
    let o = bbhull(&["polar", poly.to_str().unwrap(), "--interior", "1/2,x,0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_is_reproducible_and_counts_are_constant() {
    let dir = scratch("bench");
    let (a, b) = (dir.join("a.csv"), dir.join("b.csv"));
    for path in [&a, &b] {
        let o = bbhull(&[
            "bench", "dwarfed-cube", "--d", "6", "--runs", "5", "--seed", "17", "--no-timing", "--csv", path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{o:?}");
        assert!(stdout(&o).starts_with("metric"));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 11);
        assert_eq!((cols[5], cols[6]), ("37", "13"));
        assert_eq!(cols[10], "");
    }

    let o = bbhull(&["bench", "cube", "--d", "3", "--runs", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(!row.ends_with(','), "timing column filled: {row}");
}

#[test]
fn bench_accepts_a_file() {
    let dir = scratch("bench-file");
    let poly = dir.join("square.poly");
    fs::write(&poly, "POLY 2\nV 5\n0 0\n1 0\n1 1\n0 1\n1/2 1/2\n").unwrap();
    let o = bbhull(&["bench", poly.to_str().unwrap(), "--runs", "3", "--no-timing"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("square,2,,random,0,4,4,"));
}

#[test]
fn exit_codes() {
    let dir = scratch("exit");
    assert_eq!(bbhull(&["--help"]).status.code(), Some(0));
    assert_eq!(bbhull(&["--version"]).status.code(), Some(0));
    assert_eq!(bbhull(&[]).status.code(), Some(1));
    assert_eq!(bbhull(&["generate", "tetrahedron"]).status.code(), Some(1));
    assert_eq!(bbhull(&["generate", "cyclic", "--d", "4", "--n", "3"]).status.code(), Some(1));
    assert_eq!(bbhull(&["bench", "cube", "--runs", "0"]).status.code(), Some(1));
    assert_eq!(bbhull(&["bench", "no-such-thing"]).status.code(), Some(1));
    assert_eq!(bbhull(&["hull", dir.join("missing.poly").to_str().unwrap()]).status.code(), Some(2));

    let bad = dir.join("bad.poly");
    fs::write(&bad, "POLY 3\nV 1\n1/0 0 1\n").unwrap();
    let o = bbhull(&["hull", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 3"));

    let h_only = dir.join("h.poly");
    fs::write(&h_only, "POLY 1\nH 2\n0 1\n1 -1\n").unwrap();
    assert_eq!(bbhull(&["hull", h_only.to_str().unwrap()]).status.code(), Some(2));
}
