use qsnake_cli::{run_args, EXIT_FAILED, EXIT_INVALID, EXIT_OK, EXIT_TOO_LARGE};
use serde_json::Value;
use std::io::Write;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qsnake").chain(args.iter().copied());
    let code = run_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value, String) {
    let mut v = vec!["--json"];
    v.extend_from_slice(args);
    let (code, out, _) = run(&v);
    (code, serde_json::from_str(&out).expect("stdout is JSON"), out)
}

#[test]
fn fundamental_a2() {
    let (code, out, _) = run(&["qchar", "--algebra", "A2", "--snake", "(1,0)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("dim 3"));
    assert!(out.contains("Y1,2^-1 Y2,1"));
    assert!(out.contains("Y2,3^-1"));
}

// dimensions of fundamental modules: binomials in type A, 2N+1 and 2^N in type B
#[test]
fn fundamental_dimensions() {
    let cases: &[(&str, i32, i32, usize)] = &[
        ("A1", 1, 0, 2),
        ("A3", 2, 1, 6),
        ("A4", 2, 1, 10),
        ("A4", 3, 0, 10),
        ("B2", 1, 0, 5),
        ("B2", 2, 1, 4),
        ("B3", 1, 0, 7),
        ("B3", 3, 1, 8),
    ];
    for &(alg, i, k, dim) in cases {
        let snake = format!("({i},{k})");
        let (code, v, _) = run_json(&["qchar", "--algebra", alg, "--snake", &snake]);
        assert_eq!(code, EXIT_OK, "{alg} {snake}");
        let terms = v["character"]["terms"].as_array().unwrap();
        let total: u64 = terms.iter().map(|t| t["c"].as_u64().unwrap()).sum();
        assert_eq!(total as usize, dim, "{alg} {snake}");
    }
}

#[test]
fn invalid_point_is_rejected() {
    let (code, _, err) = run(&["qchar", "--algebra", "A2", "--snake", "(1,1)"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("not in the lattice"));
}

#[test]
fn bad_arguments() {
    assert_eq!(run(&["qchar", "--algebra", "C2", "--snake", "(1,0)"]).0, EXIT_INVALID);
    assert_eq!(run(&["qchar", "--algebra", "A2"]).0, EXIT_INVALID);
    assert_eq!(run(&["no-such-command"]).0, EXIT_INVALID);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn b2_relation() {
    let (code, out, _) = run(&["verify-tsys", "--algebra", "B2", "--snake", "(1,0),(2,5),(1,10)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("16·16 = 60·4 + 4·4"), "{out}");
    assert!(out.contains("identity true"));
}

#[test]
fn relation_with_certificate() {
    let (code, v, _) = run_json(&["verify-tsys", "--algebra", "A2", "--snake", "(1,0),(2,3),(1,6)", "--certificate", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["kind"], "prime");
}

#[test]
fn enumeration_cap() {
    let (code, _, err) = run(&["--max-tuples", "1", "qchar", "--algebra", "A3", "--snake", "(1,0),(2,3)"]);
    assert_eq!(code, EXIT_TOO_LARGE);
    assert!(err.contains("cap"));
}

#[test]
fn families() {
    let (code, out, _) = run(&["verify-family", "--algebra", "A3", "--family", "kr", "--params", r#"{"i":2,"k":1,"m":2}"#]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("6·6 = 20·1 + 4·4"), "{out}");
    let bad = run(&["verify-family", "--algebra", "A2", "--family", "nope", "--params", "{}"]);
    assert_eq!(bad.0, EXIT_INVALID);
    let bad = run(&["verify-family", "--algebra", "A2", "--family", "kr", "--params", "not json"]);
    assert_eq!(bad.0, EXIT_INVALID);
}

#[test]
fn factorize() {
    let (code, out, _) = run(&["factorize", "--algebra", "A1", "--num", "Y1,0", "--den", "Y1,2^-1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "A1,1^1");
    let (code, _, _) = run(&["factorize", "--algebra", "A1", "--num", "Y1,0"]);
    assert_eq!(code, EXIT_FAILED);
}

#[test]
fn b2_decompose_and_qsystem() {
    let (code, out, _) = run(&["b2-decompose", "--m", "1", "--mid", "1", "--n", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("V(0,3) + V(2,1)"));
    assert!(out.contains("dim 60"));
    let (code, out, _) = run(&["b2-qsystem"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("fails"));
}

#[test]
fn diagram_ascii() {
    let (code, out, _) = run(&["diagram", "--algebra", "B2", "--snake", "(1,0),(2,5),(1,10)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches('O').count(), 3);
    let (code, v, _) = run_json(&["diagram", "--algebra", "A2", "--snake", "(1,0)", "--format", "tikz", "--paths"]);
    assert_eq!(code, EXIT_OK);
    let text = v["text"].as_str().unwrap();
    assert!(text.contains("\\begin{tikzpicture}"));
    assert_eq!(text.matches("\\begin{").count(), text.matches("\\end{").count());
}

fn thma_file(monomials: &str) -> tempfile_path::Path {
    let json = format!(
        r#"{{"algebra":"A1","m_plus":{{"factors":[[1,0,1]]}},"monomials":[{monomials}],"region":[[1,1]]}}"#
    );
    tempfile_path::Path::new(&json)
}

// minimal self-cleaning temp file
mod tempfile_path {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static N: AtomicUsize = AtomicUsize::new(0);

    pub struct Path(pub std::path::PathBuf);

    impl Path {
        pub fn new(contents: &str) -> Path {
            let n = N.fetch_add(1, Ordering::Relaxed);
            let p = std::env::temp_dir().join(format!("qsnake-cli-{}-{n}.json", std::process::id()));
            std::fs::write(&p, contents).unwrap();
            Path(p)
        }
        pub fn as_str(&self) -> &str {
            self.0.to_str().unwrap()
        }
    }

    impl Drop for Path {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }
}

#[test]
fn thma_verdicts() {
    let good = thma_file(r#"{"factors":[[1,0,1]]},{"factors":[[1,2,-1]]}"#);
    let (code, out, _) = run(&["thma-verify", "--input", good.as_str()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verdict true"));

    let partial = thma_file(r#"{"factors":[[1,0,1]]}"#);
    let (code, out, _) = run(&["thma-verify", "--input", partial.as_str()]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("verdict false"));

    let mut f = std::fs::File::create(good.as_str()).unwrap();
    f.write_all(b"{").unwrap();
    assert_eq!(run(&["thma-verify", "--input", good.as_str()]).0, EXIT_INVALID);
    assert_eq!(run(&["thma-verify", "--input", "/nonexistent/qsnake.json"]).0, EXIT_INVALID);
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let args = ["qchar", "--algebra", "B2", "--snake", "(1,0),(2,5)"];
    let (_, v1, raw1) = run_json(&args);
    let (_, v2, raw2) = run_json(&args);
    assert_eq!(raw1, raw2);
    assert_eq!(v1, v2);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v1).unwrap()).unwrap();
    assert_eq!(again, v1);
    let c: qsnake::laurent::Character = serde_json::from_value(v1["character"].clone()).unwrap();
    assert_eq!(c.dim(), 16);
}
