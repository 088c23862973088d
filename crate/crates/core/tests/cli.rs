use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn augnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_augnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn assert_one_line_failure(out: &Output) -> String {
    assert!(!out.status.success(), "expected failure");
    let err = stderr(out);
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(err.starts_with("error: "), "{err}");
    err
}

fn gen(dir: &Path, extra: &[&str]) -> Output {
    let out_dir = dir.display().to_string();
    let mut args = vec!["gen-synth", "--out-dir", &out_dir, "--nodes", "60", "--seed", "7"];
    args.extend_from_slice(extra);
    augnet(&args)
}

#[test]
fn gen_synth_writes_three_files_reproducibly() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    let out = gen(&a, &[]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("file,path,rows\n"));
    assert_eq!(csv.lines().count(), 4);
    assert!(gen(&b, &[]).status.success());
    for f in ["edges.tsv", "contents.tsv", "labels.tsv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn gen_synth_rejects_p_out_above_p_in() {
    let tmp = tempfile::tempdir().unwrap();
    let err = assert_one_line_failure(&gen(tmp.path(), &["--p-in", "0.5", "--p-out", "0.9"]));
    assert!(err.contains("p_out"), "{err}");
}

#[test]
fn pretrained_vectors_feed_training_and_dimensions_must_agree() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(gen(tmp.path(), &[]).status.success());
    let p = |f: &str| tmp.path().join(f).display().to_string();

    let out = augnet(&["pretrain-words", "--contents", &p("contents.tsv"), "--output", &p("w.txt"), "--dim", "8", "--epochs", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let header = fs::read_to_string(p("w.txt")).unwrap();
    assert!(header.lines().next().unwrap().ends_with(" 8"));

    let train = |dim: &str| {
        augnet(&[
            "train", "--edges", &p("edges.tsv"), "--contents", &p("contents.tsv"), "--word-vectors", &p("w.txt"),
            "--dim", dim, "--epochs", "1", "--output", &p("emb.txt"), "--loss-csv", &p("loss.csv"),
        ])
    };
    let out = train("8");
    assert!(out.status.success(), "{}", stderr(&out));
    let loss = fs::read_to_string(p("loss.csv")).unwrap();
    assert!(loss.starts_with("step,branch,window_mean_loss,eta\n"));
    let emb = fs::read_to_string(p("emb.txt")).unwrap();
    assert_eq!(emb.lines().next().unwrap(), "60 8");

    let err = assert_one_line_failure(&train("10"));
    assert!(err.contains("dimension 8") && err.contains("--dim is 10"), "{err}");
}

#[test]
fn content_file_is_needed_only_when_alpha_below_one() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(gen(tmp.path(), &[]).status.success());
    let p = |f: &str| tmp.path().join(f).display().to_string();
    let base = ["train", "--edges", &p("edges.tsv"), "--dim", "4", "--epochs", "1", "--output", &p("e.txt")];

    let mut args = base.to_vec();
    args.extend(["--alpha", "1.0"]);
    let out = augnet(&args);
    assert!(out.status.success(), "{}", stderr(&out));

    let mut args = base.to_vec();
    args.extend(["--alpha", "0.5"]);
    let err = assert_one_line_failure(&augnet(&args));
    assert!(err.contains("--contents"), "{err}");
}

#[test]
fn missing_input_is_reported_before_work() {
    let tmp = tempfile::tempdir().unwrap();
    let missing = tmp.path().join("nope.tsv").display().to_string();
    let out_path = tmp.path().join("out.txt");
    let err = assert_one_line_failure(&augnet(&[
        "train", "--edges", &missing, "--alpha", "1", "--output", &out_path.display().to_string(),
    ]));
    assert!(err.contains("nope.tsv"), "{err}");
    assert!(!out_path.exists());
}

#[test]
fn eval_names_unknown_label_key_and_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(gen(tmp.path(), &[]).status.success());
    let p = |f: &str| tmp.path().join(f).display().to_string();
    let out = augnet(&["train", "--edges", &p("edges.tsv"), "--contents", &p("contents.tsv"), "--dim", "8", "--epochs", "2", "--output", &p("emb.txt")]);
    assert!(out.status.success(), "{}", stderr(&out));

    let eval = |labels: &str| augnet(&["eval", "--embeddings", &p("emb.txt"), "--labels", labels, "--trials", "1", "--seed", "3"]);
    let first = eval(&p("labels.tsv"));
    assert!(first.status.success(), "{}", stderr(&first));
    let csv = String::from_utf8(first.stdout.clone()).unwrap();
    assert!(csv.starts_with("ratio,mean_micro_f1,std,trials\n"));
    assert_eq!(csv.lines().count(), 10);
    assert_eq!(first.stdout, eval(&p("labels.tsv")).stdout);

    let mut labels = fs::read_to_string(p("labels.tsv")).unwrap();
    labels.push_str("ghost\tc0\n");
    fs::write(p("labels2.tsv"), labels).unwrap();
    let err = assert_one_line_failure(&eval(&p("labels2.tsv")));
    assert!(err.contains("ghost"), "{err}");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("gen.cfg");
    fs::write(&cfg, "# small network\nnodes = 30\ncommunities = 3\nseed = 5\n").unwrap();
    let dir = tmp.path().join("d").display().to_string();
    let out = augnet(&["gen-synth", "--config", &cfg.display().to_string(), "--out-dir", &dir, "--nodes", "40"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let labels = fs::read_to_string(tmp.path().join("d/labels.tsv")).unwrap();
    assert_eq!(labels.lines().count(), 40);
    assert!(labels.contains("\tc2"));

    fs::write(&cfg, "nodes = 30\ncolour = blue\n").unwrap();
    let err = assert_one_line_failure(&augnet(&["gen-synth", "--config", &cfg.display().to_string(), "--out-dir", &dir]));
    assert!(err.contains("colour"), "{err}");
}

#[test]
fn help_lists_flags_with_defaults() {
    let out = augnet(&["train", "--help"]);
    assert!(out.status.success());
    let help = String::from_utf8(out.stdout).unwrap();
    for flag in ["--alpha", "--encoder", "--dim", "--epochs", "--eta0", "--neg-nn", "--neg-nc", "--word-vectors", "--freeze-words", "--directed", "--workers", "--seed"] {
        assert!(help.contains(flag), "missing {flag}");
    }
    assert!(help.contains("[default: 0.5]") && help.contains("[default: 15]"));
    let out = augnet(&["pretrain-words", "--help"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("[default: 5]"));
}
