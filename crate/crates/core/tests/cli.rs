use std::process::{Command, Output};

fn sticky_hopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sticky-hopf")).args(args).env("STICKY_HOPF_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_subcommand() {
    let o = sticky_hopf(&["table", "classical1d"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "   | dX dT\n----------\ndX | dT 0\ndT | 0  0\n");
    let o = sticky_hopf(&["table", "quantumAhat", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.contains("dAhat,dAhatDag,s+ dT\n") && text.contains("dAhatDag,dAhat,s- dT\n"), "{text}");
    let o = sticky_hopf(&["table", "classicalZ", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["time"], "dT");
    let o = sticky_hopf(&["table", "unknownTable"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("classical1d"));
}

#[test]
fn product_subcommand() {
    assert_eq!(stdout(&sticky_hopf(&["product", "classical1d", "{dX}", "{dX}"])), "2{dX*dX} + {dT}\n");
    assert_eq!(
        stdout(&sticky_hopf(&["product", "--nonsticky", "classicalPlanar", "{dX}", "{dY}"])),
        "{dX*dY} + {dY*dX}\n"
    );
    let o = sticky_hopf(&["product", "quantumAhat", "{dAhat}", "{dAhatDag}", "--format", "csv"]);
    assert_eq!(stdout(&o), "word,coefficient\ndAhat*dAhatDag,1\ndAhatDag*dAhat,1\ndT,s+\n");
    assert_eq!(sticky_hopf(&["product", "classical1d", "", "{dX}"]).status.code(), Some(2));
    assert_eq!(sticky_hopf(&["product", "classical1d", "{dQ}", "{dX}"]).status.code(), Some(2));
}

#[test]
fn moments_subcommand() {
    let o = sticky_hopf(&["moments", "--order", "4", "--sigma", "inf", "--a", "0", "--b", "1", "--method", "closed", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["moment"], "5/16");
    let o = sticky_hopf(&["moments", "--order", "3", "--sigma", "inf", "--a", "0", "--b", "1", "--method", "all"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().filter(|l| !l.starts_with("match")).all(|l| l.contains("moment = 0")));
    let o = sticky_hopf(&["moments", "--order", "2", "--sigma", "1", "--a", "0", "--b", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "order,method,w,a,b,sigma,moment\n2,hopf,-2 s+ s-,0,1,1,0\n");
    let o = sticky_hopf(&["moments", "--order", "2", "--a", "-1", "--b", "1", "--sigma", "symbolic"]);
    assert!(stdout(&o).contains("moment = 4 s+ s-"), "{}", stdout(&o));
}

#[test]
fn method_all_reports_agreement() {
    let o = sticky_hopf(&["moments", "--order", "6", "--method", "all", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
    let o = sticky_hopf(&["moments", "--order", "7", "--method", "all"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("--allow-large-oracle"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["moments", "--order", "2", "--a", "1", "--b", "1"],
        vec!["moments", "--order", "2", "--sigma", "1/2"],
        vec!["moments", "--order", "7", "--method", "oracle"],
        vec!["moments", "--order", "2", "--area", "quantumPQ"],
        vec!["euler", "--kind", "bogus", "--n", "3"],
        vec!["nothing"],
    ] {
        assert_eq!(sticky_hopf(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn euler_subcommand() {
    assert_eq!(stdout(&sticky_hopf(&["euler", "--kind", "zigzag", "--n", "8"])), "1,1,1,2,5,16,61,272,1385\n");
    assert_eq!(stdout(&sticky_hopf(&["euler", "--kind", "eulerian", "--n", "3"])), "1,4,1\n");
    assert_eq!(stdout(&sticky_hopf(&["euler", "--kind", "polynomial", "--n", "1"])), "1\n");
    assert_eq!(
        stdout(&sticky_hopf(&["euler", "--kind", "cyclicdescents", "--n", "4", "--format", "csv"])),
        "n,j,value\n4,0,0\n4,1,4\n4,2,16\n4,3,4\n4,4,0\n"
    );
    let o = sticky_hopf(&["euler", "--kind", "zigzag", "--n", "30", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["values"][30], "441543893249023104553682821");
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let args = ["moments", "--order", "6", "--method", "all", "--sigma", "symbolic", "--format", "json"];
    let first = sticky_hopf(&args);
    assert_eq!(first.stdout, sticky_hopf(&args).stdout);

    let dir = std::env::temp_dir().join(format!("sticky-hopf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let o = sticky_hopf(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), first.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
