use std::process::{Command, Output};

fn v22(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_v22")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const KLEIN: &str = "x0^3*x1 + x1^3*x2 + x2^3*x0";

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 4] = [
        (&["circle", "--klein"], 0),
        (&["weights", KLEIN, "x0", "x1"], 1),
        (&["circle", "z0^2", "z1^2", "z2^2"], 2),
        (&["hf", "x0 + x1^2"], 3),
    ];
    for (args, code) in cases {
        assert_eq!(v22(args).status.code(), Some(code), "{args:?}");
    }
}

#[test]
fn circle_prints_the_verdicts() {
    let out = stdout(&v22(&["circle", "--klein"]));
    assert!(out.contains("dual_socle_n = x0^3*x1 + x1^3*x2 + x0*x2^3"), "{out}");
    assert!(
        out.contains("detail.covariant_vs_discriminant = proportional, lambda = -16"),
        "{out}"
    );
    assert!(!out.contains("= fail"), "{out}");
}

#[test]
fn classify_and_hilbert() {
    let out = stdout(&v22(&["classify", KLEIN]));
    assert!(out.contains("hilbert = 1 3 6 3 1"), "{out}");
    assert!(out.contains("row = 1"), "{out}");
    assert_eq!(stdout(&v22(&["hf", "x0^4 + x1^4"])).trim(), "hilbert = 1 2 2 2 1");
}

#[test]
fn resolve_klein() {
    let out = stdout(&v22(&["resolve", "--klein"]));
    assert!(
        out.contains("betti = (0,0,1) (1,2,7) (2,3,8) (2,4,3) (3,5,8) (4,6,3)"),
        "{out}"
    );
}

#[test]
fn quadrics_from_a_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("klein_net.txt");
    let inline = stdout(&v22(&["discriminant", "--klein"]));
    std::fs::write(
        &path,
        "# Klein net\n1/2*z1^2 - z0*z2\n1/2*z2^2 - z0*z3\n\n1/2*z3^2 - z0*z1\n",
    )
    .unwrap();
    let from_file = v22(&["discriminant", path.to_str().unwrap()]);
    assert_eq!(
        from_file.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&from_file.stderr)
    );
    assert_eq!(stdout(&from_file), inline);
}
