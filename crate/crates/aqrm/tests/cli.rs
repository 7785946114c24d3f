use std::process::{Command, Output};

fn aqrm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqrm")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(aqrm(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(aqrm(&["spectrum", "--g", "abc"]).status.code(), Some(2));
    assert_eq!(aqrm(&["gfunc", "--g", "1", "--x", "1:0:0.1"]).status.code(), Some(2));
}

#[test]
fn verify_exits_zero() {
    let o = aqrm(&["verify", "divisibility", "--max-N", "4", "--max-ell", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("check,case,passed,detail"));
}

#[test]
fn sweep_output_is_reproducible() {
    let args = ["sweep", "--delta", "1", "--eps", "1/2", "--g", "0:1:0.25", "--levels", "4"];
    let (a, b) = (aqrm(&args), aqrm(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("g,index,lambda,x,kind,multiplicity,level_N,branch"));
    assert!(text.lines().any(|l| l.contains("juddian")));
}

#[test]
fn json_and_config() {
    let dir = std::env::temp_dir().join(format!("aqrm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("p.json");
    std::fs::write(&cfg, r#"{"g": 0.5, "delta": 1, "eps": "1/2"}"#).unwrap();
    let o = aqrm(&["spectrum", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.to_string().contains("juddian"));
    let out = dir.join("poly.csv");
    let o = aqrm(&["poly", "--N", "6", "--eps", "0", "--k", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&out).unwrap().contains("16"));
    std::fs::remove_dir_all(&dir).ok();
}
