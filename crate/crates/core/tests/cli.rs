use std::path::Path;
use std::process::{Command, Output};

use lchca::ff::{find_irreducible, Prime};
use lchca::lchca::CaSpecFile;
use lchca::matfp::MatrixFp;
use lchca::pow::{self, PowChallenge, PowParams, PowSolution, Verdict};

fn lchca(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lchca"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn last_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .last()
        .unwrap_or("")
        .to_string()
}

fn write_companion(dir: &Path, name: &str, f: &str) {
    let m = MatrixFp::companion(&f.parse().unwrap()).unwrap();
    std::fs::write(dir.join(name), CaSpecFile::from_matrix(&m).unwrap().to_toml()).unwrap();
}

#[test]
fn gen_round_trips_and_classifies() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = lchca(d, &["gen", "--p", "2", "--n", "4", "--primitive", "--out", "ca.toml"]);
    assert!(out.status.success());
    let out = lchca(d, &["--spec", "ca.toml", "classify"]);
    assert_eq!(last_line(&out), "hybrid max-length");
    let a = lchca(d, &["gen", "--p", "3", "--n", "5", "--seed", "4"]);
    let b = lchca(d, &["gen", "--p", "3", "--n", "5", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let spec = CaSpecFile::parse(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert!(spec.build().unwrap().class().is_hybrid());
    let out = lchca(d, &["gen", "--p", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_companion(d, "ca.toml", "2:1,1,0,0,1");
    let out = lchca(d, &["--spec", "ca.toml", "run", "--s", "1000", "--tau", "0"]);
    assert_eq!(last_line(&out), "1000");
    let out = lchca(d, &["--spec", "ca.toml", "run", "--s", "1000", "--tau", "4"]);
    assert_eq!(last_line(&out), "1100");
    let out = lchca(d, &["--spec", "ca.toml", "run", "--s", "1020", "--tau", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lchca(d, &["--spec", "ca.toml", "run", "--s", "1x00", "--tau", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lchca(d, &["run", "--s", "1000", "--tau", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solver_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_companion(d, "max.toml", "2:1,1,0,0,1");
    write_companion(d, "group.toml", "2:1,1,1,1,1");
    let out = lchca(d, &["--spec", "max.toml", "ddp", "--s", "1000", "--t", "1000"]);
    assert_eq!((last_line(&out).as_str(), out.status.code()), ("0", Some(0)));
    let out = lchca(d, &["--spec", "max.toml", "ddp", "--s", "1000", "--t", "1100"]);
    assert_eq!(last_line(&out), "4");
    let out = lchca(d, &["--spec", "group.toml", "ddp", "--s", "1000", "--t", "1100"]);
    assert_eq!((last_line(&out).as_str(), out.status.code()), ("unreachable", Some(1)));
    let out = lchca(
        d,
        &[
            "--spec",
            "group.toml",
            "ddp",
            "--s",
            "1000",
            "--t",
            "1100",
            "--bruteforce",
        ],
    );
    assert_eq!(last_line(&out), "unreachable");
    let out = lchca(
        d,
        &["--spec", "max.toml", "sddp", "--s", "1000", "--x", "00", "--delta", "8"],
    );
    assert_eq!(last_line(&out), "2");
    let out = lchca(
        d,
        &["--spec", "max.toml", "sddp", "--s", "1000", "--x", "00", "--delta", "2"],
    );
    assert_eq!((last_line(&out).as_str(), out.status.code()), ("none", Some(1)));
    let out = lchca(
        d,
        &[
            "--spec", "max.toml", "fdp", "--s", "1000", "--x", "11", "--coords", "3,1",
        ],
    );
    assert_eq!(last_line(&out), "7");
    let out = lchca(d, &["--spec", "group.toml", "fdp", "--s", "1000", "--x", "110"]);
    assert_eq!(out.status.code(), Some(1));
    let out = lchca(d, &["--spec", "max.toml", "cycles"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1000 15\n1\n");
}

#[test]
fn instance_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write_companion(d, "ca.toml", "2:1,1,0,0,1");
    std::fs::write(d.join("ddp.toml"), "spec = \"ca.toml\"\ns = \"1000\"\nt = \"0110\"\n").unwrap();
    let out = lchca(d, &["ddp", "--instance", "ddp.toml"]);
    assert_eq!(last_line(&out), "5");
    std::fs::write(
        d.join("sddp.toml"),
        "spec = \"ca.toml\"\ns = \"1000\"\nx = \"00\"\ndelta = 8\n",
    )
    .unwrap();
    let out = lchca(d, &["sddp", "--instance", "sddp.toml", "--format", "structured"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let t: toml::Table = toml::from_str(&text).unwrap();
    assert_eq!(t["result"].as_str(), Some("2"));
    assert_eq!(t["tau"].as_integer(), Some(2));
}

#[test]
fn capacity_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(lchca(d, &["gen", "--p", "2", "--n", "30", "--out", "big.toml"])
        .status
        .success());
    let out = lchca(d, &["--spec", "big.toml", "cycles"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn pow_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let f = find_irreducible(Prime::new(2).unwrap(), 16, true, 0)
        .unwrap()
        .to_string();
    let params = PowParams::recommended(f.parse().unwrap(), 5).unwrap();
    // a message whose witness is followed by a non-witness
    let msg = (0..)
        .map(|i| format!("block {i}"))
        .find(|m| {
            let ch = pow::make_challenge(m.as_bytes(), &params);
            let tau = pow::prove(&ch).unwrap().unwrap().tau;
            pow::verify(&ch, &PowSolution { tau: tau + 1 }) != Verdict::Accept
        })
        .unwrap();
    let out = lchca(
        d,
        &[
            "pow-challenge",
            "--f",
            &f,
            "--k",
            "5",
            "--message",
            &msg,
            "--out",
            "ch.toml",
        ],
    );
    assert!(out.status.success());
    let ch = PowChallenge::from_toml(&std::fs::read_to_string(d.join("ch.toml")).unwrap()).unwrap();
    assert_eq!(ch, pow::make_challenge(msg.as_bytes(), &params));

    let out = lchca(d, &["pow-prove", "--challenge", "ch.toml"]);
    assert!(out.status.success());
    let tau: u64 = last_line(&out).parse().unwrap();
    let out = lchca(
        d,
        &["pow-verify", "--challenge", "ch.toml", "--solution", &tau.to_string()],
    );
    assert_eq!((last_line(&out).as_str(), out.status.code()), ("accept", Some(0)));

    let out = lchca(
        d,
        &[
            "pow-verify",
            "--challenge",
            "ch.toml",
            "--solution",
            &(tau + 1).to_string(),
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("prefix-mismatch"));
    let out = lchca(
        d,
        &[
            "pow-verify",
            "--challenge",
            "ch.toml",
            "--solution",
            &params.delta().to_string(),
        ],
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound-exceeded"));

    let text = std::fs::read_to_string(d.join("ch.toml")).unwrap();
    let s_line = text.lines().find(|l| l.starts_with("s = ")).unwrap();
    let flipped = if s_line.ends_with("0\"") {
        s_line.replace("0\"", "1\"")
    } else {
        s_line.replace("1\"", "0\"")
    };
    std::fs::write(d.join("forged.toml"), text.replace(s_line, &flipped)).unwrap();
    let out = lchca(
        d,
        &[
            "pow-verify",
            "--challenge",
            "forged.toml",
            "--solution",
            &tau.to_string(),
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));

    let out = lchca(d, &["pow-challenge", "--f", &f, "--k", "16", "--message", "m"]);
    assert_eq!(out.status.code(), Some(2));
}
