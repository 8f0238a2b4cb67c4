use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_photon-add"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn witness_pure_sacs() {
    let o = run(&[
        "witness",
        "--scheme",
        "pure-sacs",
        "--witness",
        "q2",
        "--alpha",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(
        stdout(&o).contains("m=1 q2=-2.000000000000e-1"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn witness_bs_coherent_q1() {
    let o = run(&[
        "witness",
        "--scheme",
        "bs-coherent",
        "--witness",
        "q1",
        "--orders",
        "1,2,3",
        "--alpha",
        "5",
        "--reflectance",
        "0.5",
        "--eta",
        "0.6",
        "--ps",
        "0.7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for prefix in ["m=1 q1=-9.82", "m=2 q1=-7.99", "m=3 q1=-6.15"] {
        assert!(text.contains(prefix), "missing {prefix} in\n{text}");
    }
    assert!(text.contains("p_nd 1.30"), "{text}");
}

#[test]
fn invalid_input_exits_2() {
    let cases: [&[&str]; 5] = [
        &[
            "witness",
            "--scheme",
            "pure-sats",
            "--witness",
            "q1",
            "--nbar",
            "1",
        ],
        &[
            "witness",
            "--scheme",
            "bs-coherent",
            "--witness",
            "q2",
            "--alpha",
            "1",
            "--reflectance",
            "1.5",
            "--eta",
            "1",
            "--ps",
            "1",
        ],
        &[
            "witness",
            "--scheme",
            "pure-sacs",
            "--witness",
            "q2",
            "--alpha",
            "1",
            "--orders",
            "0",
        ],
        &[
            "witness",
            "--scheme",
            "pure-sats",
            "--witness",
            "q2",
            "--nbar",
            "1",
            "--nbar-inv",
            "1",
        ],
        &["verify", "--tolerance", "0"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let o = run(&[
        "sweep",
        "--scheme",
        "pure-sacs",
        "--witness",
        "q2",
        "--axis1",
        "alpha=0.5:1:0.5",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn missing_config_exits_3() {
    let o = run(&["witness", "--config", "/nonexistent/photon-add.conf"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn sweep_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.csv"), dir.path().join("b.csv")];
    for p in &paths {
        let o = run(&[
            "sweep",
            "--scheme",
            "bs-thermal",
            "--witness",
            "q2",
            "--orders",
            "1,2",
            "--axis1",
            "nbar_inv=0.5:3:0.5",
            "--axis2",
            "reflectance=0.1:0.9:0.2",
            "--eta",
            "0.6",
            "--ps",
            "0.7",
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let a = fs::read(&paths[0]).unwrap();
    assert_eq!(a, fs::read(&paths[1]).unwrap());
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("axis1,axis2,m,witness,value,p_nd,defined,sign")
    );
    assert_eq!(lines.count(), 6 * 5 * 2);
}

#[test]
fn single_axis_sweep_marks_undefined_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sacs.csv");
    let o = run(&[
        "sweep",
        "--scheme",
        "pure-sacs",
        "--witness",
        "q2",
        "--orders",
        "2",
        "--axis1",
        "alpha=0:1:0.5",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(
        rows[0].starts_with("0.0000000000000000e0,nan,2,q2,nan,nan,0,0"),
        "{}",
        rows[0]
    );
    assert!(rows[2].ends_with(",1,-1"), "{}", rows[2]);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("point.conf");
    fs::write(
        &conf,
        "# pure SACS point\nscheme = pure-sacs\nwitness = q2\nalpha = 2\n",
    )
    .unwrap();
    let from_file = run(&["witness", "--config", conf.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    let overridden = run(&[
        "witness",
        "--config",
        conf.to_str().unwrap(),
        "--alpha",
        "1",
    ]);
    let direct = run(&[
        "witness",
        "--scheme",
        "pure-sacs",
        "--witness",
        "q2",
        "--alpha",
        "1",
    ]);
    assert_eq!(stdout(&overridden), stdout(&direct));
    assert_ne!(stdout(&from_file), stdout(&direct));

    fs::write(&conf, "scheme = pure-sacs\nbogus = 1\n").unwrap();
    let o = run(&["witness", "--config", conf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn verify_failure_is_reproducible_and_exits_1() {
    let args = ["verify", "--tolerance", "1e-300", "--seed", "42"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(1), "{}", stderr(&first));
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("FAIL"), "{}", stdout(&first));
}
