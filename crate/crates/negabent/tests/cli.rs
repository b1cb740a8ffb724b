use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use negabent::format::{FunctionFile, PartitionFile};
use negabent::{analyze, FormatError};
use serde_json::Value;

fn negabent(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negabent"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn jsonl(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

#[test]
fn function_files_round_trip() {
    let texts = [
        "boolfn n=3 flavor=mv\n96\n",
        "boolfn n=3 flavor=uv:0xb\n1e\n",
        "genfn n=3 k=2 flavor=uv:0xb\n01232103\n",
        "genfn n=2 k=5 flavor=mv\n001f0a11\n",
        "vectfn n=6 k=2 flavor=uv:0x43\n0000000001012323031203120231310203301221002211330123321002132031\n",
    ];
    for text in texts {
        let f = FunctionFile::parse(text).unwrap();
        assert_eq!(f.to_text(), text);
        assert_eq!(FunctionFile::parse(&f.to_text()).unwrap(), f);
    }
    // comments and layout whitespace are not significant
    let spaced =
        FunctionFile::parse("# note\ngenfn n=3 k=2 flavor=uv:0xb\n0123\n 2103 \n").unwrap();
    assert_eq!(spaced, FunctionFile::parse(texts[2]).unwrap());
}

#[test]
fn parse_errors_are_classified() {
    let syntax = [
        "",
        "boolfn n=3\n96\n",
        "boolfn n=3 flavor=mv\n9\n",
        "genfn n=2 k=2 flavor=mv\n0124\n",
        "boolfn n=2 flavor=mv\nz\n",
        "boolfn n=3 flavor=xx\n96\n",
    ];
    for text in syntax {
        assert!(
            matches!(FunctionFile::parse(text), Err(FormatError::Syntax(_))),
            "{text:?}"
        );
    }
    let flavor = ["boolfn n=3 flavor=uv:0xf\n96\n", "boolfn n=2 flavor=uv:0xb\n6\n", "boolfn n=3 flavor=bv:0xb\n96\n", "vectfn n=6 k=2 flavor=bv:0xb\n0000000000000000000000000000000000000000000000000000000000000000\n"];
    for text in flavor {
        assert!(
            matches!(FunctionFile::parse(text), Err(FormatError::Flavor(_))),
            "{text:?}"
        );
    }
}

#[test]
fn partition_file_round_trip() {
    let text = r#"{"n":4,"U":[0,1,2,3],"parts":[[4,5,6,7],[8,9,10,11,12,13,14,15]]}"#;
    let p = PartitionFile::parse(text).unwrap();
    assert_eq!(
        PartitionFile::parse(&PartitionFile::to_text(&p)).unwrap(),
        p
    );
    assert!(PartitionFile::parse("{").is_err());
}

#[test]
fn analyze_reports_bentness() {
    let bent = FunctionFile::parse("boolfn n=2 flavor=mv\n8\n").unwrap();
    let report = analyze(&bent);
    assert_eq!(report.verdicts.bent, Some(true));
    assert_eq!(report.verdicts.negabent, Some(false));
    assert_eq!(report.spectrum.distinct_values, 2);

    let zero = FunctionFile::parse("genfn n=3 k=2 flavor=uv:0xb\n00000000\n").unwrap();
    let report = analyze(&zero);
    assert_eq!(report.verdicts.gbent, Some(false));
    assert_eq!(report.verdicts.z2k_bent, Some(false));
    assert_eq!(report.rds.map(|r| r.is_rds), Some(false));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("bad.bf"), "boolfn n=3 flavor=mv\nxyz\n").unwrap();
    fs::write(d.join("flav.bf"), "boolfn n=3 flavor=uv:0xf\n96\n").unwrap();
    fs::write(d.join("ok.bf"), "boolfn n=2 flavor=mv\n8\n").unwrap();

    assert_eq!(code(&negabent(&["analyze", "ok.bf"], d)), 0);
    assert_eq!(code(&negabent(&["analyze", "bad.bf"], d)), 2);
    assert_eq!(code(&negabent(&["analyze", "missing.bf"], d)), 2);
    assert_eq!(code(&negabent(&["analyze", "flav.bf"], d)), 3);
    assert_eq!(code(&negabent(&["verify", "no-such-suite"], d)), 2);

    // c1 + c2 + c3 = 0 is refused before building anything
    let out = negabent(
        &[
            "construct",
            "cex",
            "--field",
            "m=3",
            "--e",
            "3",
            "--c",
            "1,2,3",
        ],
        d,
    );
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition violated"));
    // the exponent-1 condition fails for every triple at m = 3
    assert_eq!(
        code(&negabent(
            &[
                "construct",
                "cex",
                "--field",
                "m=3",
                "--e",
                "1",
                "--c",
                "1,2,4"
            ],
            d
        )),
        4
    );
    assert_eq!(
        code(&negabent(
            &[
                "construct",
                "am-gbent",
                "--field",
                "m=3",
                "--alphas",
                "1,2,3"
            ],
            d
        )),
        4
    );
    assert_eq!(
        code(&negabent(
            &["search", "cex", "--field", "m=3", "--budget", "0"],
            d
        )),
        4
    );

    let out = negabent(
        &[
            "search",
            "am-complete",
            "--field",
            "m=4",
            "--class",
            "all",
            "--budget",
            "2000",
        ],
        d,
    );
    assert_eq!(code(&out), 5);
    let lines = jsonl(&out);
    assert_eq!(lines.last().unwrap()["summary"]["exhausted"], true);

    // postcondition failures exit 1
    let out = negabent(
        &["verify", "prop-negative", "--field", "m=3", "--k", "3"],
        d,
    );
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL"));
}

#[test]
fn construct_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = negabent(
        &[
            "construct",
            "am-gbent",
            "--field",
            "m=3",
            "--h",
            "trace",
            "--out",
            "am.gen",
        ],
        d,
    );
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verified"], true);

    let out = negabent(&["analyze", "am.gen"], d);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["input"]["flavor"], "bv:0xb");
    assert_eq!(report["verdicts"]["z2k_bent"], true);
    assert_eq!(report["spectrum"]["distinct_values"], 8);
    let flat = &report["spectrum"]["plain"][0]["norms"];
    assert_eq!(flat.as_array().unwrap().len(), 1);
    assert_eq!(flat[0]["norm"], 64);

    // bivariate input is relabelled into the univariate basis before the shift
    let out = negabent(
        &[
            "construct",
            "nega-shift",
            "--field",
            "m=3",
            "--input",
            "am.gen",
            "--out",
            "nega.gen",
        ],
        d,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&negabent(&["analyze", "nega.gen"], d));
    assert_eq!(report["verdicts"]["nega_z2k_bent"], true);
    assert_eq!(report["rds"]["is_rds"], true);
    assert_eq!(report["rds"]["kappa"], 64);

    let out = negabent(
        &[
            "construct",
            "nega-shift",
            "--field",
            "m=3",
            "--input",
            "nega.gen",
            "--direction",
            "to-plain",
            "--out",
            "back.gen",
        ],
        d,
    );
    assert_eq!(code(&out), 0);
    let back = FunctionFile::parse(&fs::read_to_string(d.join("back.gen")).unwrap()).unwrap();
    let orig = FunctionFile::parse(&fs::read_to_string(d.join("am.gen")).unwrap()).unwrap();
    assert_eq!(back.n(), orig.n());
    assert_eq!(analyze(&back).verdicts.z2k_bent, Some(true));

    let out = negabent(
        &[
            "construct",
            "kppp",
            "--field",
            "m=3",
            "--k",
            "2",
            "--alphas",
            "2,4",
            "--out",
            "kp.vf",
        ],
        d,
    );
    assert_eq!(code(&out), 0);
    let report = json(&negabent(&["analyze", "kp.vf"], d));
    assert_eq!(report["verdicts"]["vectorial"]["bent_negabent"], true);
}

#[test]
fn failed_verification_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = negabent(
        &[
            "construct",
            "cex",
            "--field",
            "m=3",
            "--e",
            "1",
            "--c",
            "1,2,4",
            "--out",
            "x.gen",
        ],
        d,
    );
    assert_ne!(code(&out), 0);
    assert!(!d.join("x.gen").exists());
}

#[test]
fn output_is_deterministic_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let runs: [&[&str]; 4] = [
        &["search", "cex", "--field", "m=4", "--budget", "300"],
        &[
            "search",
            "am-complete",
            "--field",
            "m=3",
            "--class",
            "linearized",
        ],
        &[
            "search",
            "nega-gbent-nontrivial",
            "--n",
            "3",
            "--k",
            "2",
            "--budget",
            "5000",
            "--seed",
            "9",
        ],
        &["verify", "all"],
    ];
    for args in runs {
        let one = negabent(&[args, &["--workers", "1"]].concat(), d);
        let four = negabent(&[args, &["--workers", "4"]].concat(), d);
        let again = negabent(&[args, &["--workers", "4"]].concat(), d);
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(four.stdout, again.stdout, "{args:?}");
        assert_eq!(code(&one), code(&four));
    }
}

#[test]
fn cex_search_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = negabent(&["search", "cex", "--field", "m=3"], dir.path());
    assert_eq!(code(&out), 0);
    let lines = jsonl(&out);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["hits"], 84);
    for hit in &lines[..lines.len() - 1] {
        assert_eq!(hit["z8_bent"], true);
    }
    let ordinals: Vec<u64> = lines[..lines.len() - 1]
        .iter()
        .map(|h| h["ordinal"].as_u64().unwrap())
        .collect();
    assert!(ordinals.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn nega_search_values_are_fixed_width() {
    let dir = tempfile::tempdir().unwrap();
    let out = negabent(
        &[
            "search",
            "gbent-nega-gbent",
            "--n",
            "3",
            "--k",
            "5",
            "--budget",
            "50",
        ],
        dir.path(),
    );
    for hit in jsonl(&out).iter().filter(|l| l.get("summary").is_none()) {
        assert!(hit["values"]
            .as_array()
            .unwrap()
            .iter()
            .all(|v| v.as_str().unwrap().len() == 2));
    }
}

#[test]
fn config_overrides_the_registry() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // x^3 + x^2 + 1 instead of the registry's x^3 + x + 1
    fs::write(d.join("cfg"), "field.3 = 0xd\nworkers = 2\n").unwrap();
    let out = negabent(
        &[
            "construct",
            "inverse-z2k",
            "--field",
            "m=3",
            "--k",
            "2",
            "--config",
            "cfg",
        ],
        d,
    );
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["params"]["field"], "m=3,poly=0xd");
    let out = negabent(
        &[
            "construct",
            "inverse-z2k",
            "--field",
            "m=3,poly=0xb",
            "--k",
            "2",
            "--config",
            "cfg",
        ],
        d,
    );
    assert_eq!(json(&out)["params"]["field"], "m=3,poly=0xb");

    fs::write(d.join("bad"), "field.3 = 0xf\n").unwrap();
    assert_ne!(
        code(&negabent(&["verify", "oracles", "--config", "bad"], d)),
        0
    );
}

#[test]
fn csv_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("f.gen"), "genfn n=3 k=2 flavor=uv:0xb\n01232103\n").unwrap();
    let out = negabent(&["analyze", "f.gen", "--format", "csv"], d);
    assert_eq!(code(&out), 0);
    let rows = negabent::format::read_gen_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 3 * 8);
    let out = negabent(&["verify", "oracles", "--format", "csv"], d);
    assert!(String::from_utf8(out.stdout).unwrap().lines().count() > 1);
}
