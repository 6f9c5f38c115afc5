use std::path::Path;
use std::process::{Command, Output};

fn adesign(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adesign"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = adesign(
        &["construct", "t1", "--v", "7", "--k", "3", "--out", "f.txt"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let o = adesign(&["verify", "--t", "1", "f.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "adesign t=1 max_frequency=6\n");
}

#[test]
fn complete_design_collides() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.txt"),
        "blockfamily v=4 k=3\n1 : 1 2 3\n1 : 1 2 4\n1 : 1 3 4\n1 : 2 3 4\n",
    )
    .unwrap();
    let o = adesign(&["verify", "--t", "2", "c.txt"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("collision: {1 2} and {1 3}"));
    let o = adesign(&["verify", "--t", "2", "--design", "c.txt"], dir.path());
    assert_eq!(stdout(&o), "design t=2 lambda=2\n");
}

#[test]
fn search_mu_prints_certificate_line() {
    let dir = tempfile::tempdir().unwrap();
    let o = adesign(
        &[
            "search", "mu", "--t", "2", "--k", "3", "--v", "4", "--out", "c.txt",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "mu=6 optimal=true\n");
    let cert = std::fs::read_to_string(dir.path().join("c.txt")).unwrap();
    assert!(cert.contains("# mu=6 optimal=true nodes="));
    let o = adesign(&["verify", "--t", "2", "c.txt"], dir.path());
    assert_eq!(stdout(&o), "adesign t=2 max_frequency=6\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(adesign(&[], p).status.code(), Some(2));
    assert_eq!(
        adesign(&["construct", "t1", "--v", "3"], p).status.code(),
        Some(2)
    );
    assert_eq!(
        adesign(&["construct", "t1", "--v", "3", "--k", "5"], p)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        adesign(
            &["construct", "random", "--v", "12", "--k", "8", "--t", "2"],
            p
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        adesign(&["verify", "--t", "1", "missing.txt"], p)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        adesign(&["pbd", "projective", "--q", "6"], p).status.code(),
        Some(2)
    );
    let o = adesign(
        &[
            "search", "mu", "--t", "2", "--k", "3", "--v", "5", "--budget", "5",
        ],
        p,
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("budget exhausted"));
    assert_eq!(adesign(&["--help"], p).status.code(), Some(0));
}

#[test]
fn seeded_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    for name in ["a.txt", "b.txt"] {
        let o = adesign(
            &[
                "construct",
                "random",
                "--v",
                "12",
                "--k",
                "8",
                "--t",
                "2",
                "--p",
                "0.5",
                "--seed",
                "7",
                "--out",
                name,
            ],
            p,
        );
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("# attempts=1 p=0.5 max_frequency="));
        assert!(stdout(&o).contains(" seed=7"));
    }
    let a = std::fs::read(p.join("a.txt")).unwrap();
    assert_eq!(a, std::fs::read(p.join("b.txt")).unwrap());
    let o = adesign(
        &[
            "construct",
            "random",
            "--v",
            "12",
            "--k",
            "8",
            "--t",
            "2",
            "--p",
            "0.5",
            "--seed",
            "8",
            "--out",
            "c.txt",
        ],
        p,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_ne!(a, std::fs::read(p.join("c.txt")).unwrap());
}

#[test]
fn pbd_round_trip_and_compose() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(
        stdout(&adesign(
            &["pbd", "affine", "--q", "3", "--out", "a.txt"],
            p
        )),
        "points=9 blocks=12\n"
    );
    assert_eq!(
        stdout(&adesign(&["pbd", "verify", "a.txt"], p)),
        "valid points=9 blocks=12\n"
    );
    std::fs::write(p.join("bad.txt"), "pbd v=3\n1 2 3\n1 2 3\n").unwrap();
    let o = adesign(&["pbd", "verify", "bad.txt"], p);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pair {1 2} lies in 2 blocks"));
    adesign(&["pbd", "projective", "--q", "3", "--out", "p.txt"], p);
    let o = adesign(
        &["pbd", "compose", "--k", "3", "p.txt", "--out", "f.txt"],
        p,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("bound=103\n"));
    assert_eq!(
        adesign(&["verify", "--t", "2", "f.txt"], p).status.code(),
        Some(0)
    );
    let o = adesign(&["pbd", "compose", "--k", "3", "a.txt"], p);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sidon_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(
        stdout(&adesign(
            &["sidon", "greedy", "--r", "2", "--count", "5"],
            p
        )),
        "sidon r=2\n1 2 4 8 13\n"
    );
    assert_eq!(
        stdout(&adesign(&["sidon", "field", "--q", "9"], p)),
        "GF(3^2) mod 1 0 1\n"
    );
    adesign(
        &[
            "sidon",
            "bose-chowla",
            "--q",
            "7",
            "--r",
            "3",
            "--out",
            "s.txt",
        ],
        p,
    );
    assert_eq!(
        stdout(&adesign(&["sidon", "check", "s.txt"], p)),
        "B_3 size=7\n"
    );
    std::fs::write(p.join("bad.txt"), "sidon r=2\n1 2 3\n").unwrap();
    assert_eq!(
        adesign(&["sidon", "check", "bad.txt"], p).status.code(),
        Some(1)
    );
    assert_eq!(
        stdout(&adesign(
            &["sidon", "exact", "--n", "11", "--r", "2", "--out", "e.txt"],
            p
        )),
        "size=4\n"
    );
}

#[test]
fn bounds_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = adesign(
        &[
            "bounds", "table", "--t", "2", "--k", "3", "--from", "4", "--to", "4",
        ],
        dir.path(),
    );
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().last().unwrap().split_whitespace().collect();
    assert_eq!(row, ["4", "5", "-", "-", "12", "6"]);
    let o = adesign(
        &["bounds", "mu", "--t", "1", "--k", "3", "--v", "7"],
        dir.path(),
    );
    assert!(stdout(&o).starts_with("lower 6\nupper = 6"));
}

#[test]
fn cube_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = adesign(
        &["search", "cube", "--n", "2", "--out", "c.txt"],
        dir.path(),
    );
    assert_eq!(stdout(&o), "max_line_sum=11\n");
    let text = std::fs::read_to_string(dir.path().join("c.txt")).unwrap();
    let cube = adesign::formats::parse_cube(&text).unwrap();
    assert_eq!(cube.line_sums().len(), 12);
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = adesign::cli::run(
        [
            "adesign", "search", "mu", "--t", "1", "--k", "2", "--v", "5",
        ],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "mu=4 optimal=true\n");
}
