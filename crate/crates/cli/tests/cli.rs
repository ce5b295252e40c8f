use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ifnorm"));
    c.env_remove("IFN_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn write_config(dir: &tempfile::TempDir, body: &str) -> PathBuf {
    let p = dir.path().join("scenario.toml");
    std::fs::write(&p, body).unwrap();
    p
}

fn header(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).lines().next().expect("header line")).unwrap()
}

const LINE: &str = "[spaces.line]\nk = 1.0\n";

#[test]
fn list_catalog_names_every_scenario() {
    let o = run(&["list-catalog"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for s in ifnorm_cli::catalog::SCENARIOS {
        assert!(out.lines().any(|l| l.starts_with(s.name)), "{} missing", s.name);
    }
}

#[test]
fn help_is_success_and_bad_arguments_are_config_errors() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["axioms", "--no-such-flag"])), 2);
    assert_eq!(code(&run(&["catalog", "sup-deviation", "--format", "yaml"])), 2);
    assert_eq!(code(&run(&["catalog", "sup-deviation", "--seed", "minus-one"])), 2);
}

#[test]
fn passing_catalog_scenario_exits_zero() {
    let o = run(&["catalog", "sup-deviation"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    let last: serde_json::Value = serde_json::from_str(&lines[3]).unwrap();
    assert_eq!(last["type"], "summary");
    assert_eq!(last["fail"], 0);
    assert!(stderr(&o).contains("2 pass"));
}

#[test]
fn unknown_catalog_scenario_is_config_error() {
    let o = run(&["catalog", "no-such-scenario"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("no-such-scenario"));
}

#[test]
fn failed_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        &format!(
            "{LINE}[[converge]]\nspace = \"line\"\nsequence = {{ rule = \"reciprocal\", center = 0.0, direction = 1.0 }}\nr = [0.1]\nt = [0.1]\nexpect_n0 = 5\n"
        ),
    );
    let o = run(&["converge", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("\"outcome\":\"fail\""));
}

#[test]
fn inconclusive_fails_only_when_strict() {
    // n0 = 90 lands inside the last tenth of a budget of 95.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        &format!(
            "{LINE}[[converge]]\nspace = \"line\"\nsequence = {{ rule = \"reciprocal\", center = 0.0, direction = 1.0 }}\nr = [0.1]\nt = [0.1]\nbudget = 95\n"
        ),
    );
    let path = cfg.to_str().unwrap();
    let lax = run(&["converge", "--config", path]);
    assert_eq!(code(&lax), 0);
    assert!(stdout(&lax).contains("\"outcome\":\"inconclusive\""));
    let strict = run(&["converge", "--config", path, "--strict-inconclusive"]);
    assert_eq!(code(&strict), 1);
}

#[test]
fn syntax_errors_report_their_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, &format!("kind = \"axioms\"\n{LINE}\n[[axioms]]\nspace = \"line\"\ntire = \"core\"\n"));
    let o = run(&["axioms", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("line 7"), "{err}");
    assert!(err.contains("tire"), "{err}");
    assert!(o.stdout.is_empty());
}

#[test]
fn semantic_errors_name_field_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let check = "space = \"line\"\nsequence = { rule = \"reciprocal\", center = 0.0, direction = 1.0 }\nt = [0.1]\n";
    let cfg = write_config(&dir, &format!("{LINE}\n[[converge]]\n{check}r = [0.1]\n\n[[converge]]\n{check}r = [1.5]\n"));
    let o = run(&["converge", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("converge[1].r"), "{err}");
    assert!(err.contains("line 10"), "{err}");
}

#[test]
fn kind_must_match_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "kind = \"topology\"\n");
    let o = run(&["axioms", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("topology"));
    let sections = write_config(&dir, &format!("{LINE}[[axioms]]\nspace = \"line\"\n"));
    assert_eq!(code(&run(&["topology", "--config", sections.to_str().unwrap()])), 2);
}

#[test]
fn subcommands_other_than_catalog_need_a_config() {
    let o = run(&["axioms"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--config"));
}

#[test]
fn empty_config_yields_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "kind = \"axioms\"\n");
    let o = run(&["axioms", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].contains("\"records\":0"));
}

#[test]
fn missing_config_file_is_io_error() {
    let o = run(&["axioms", "--config", "/nonexistent/ifnorm.toml"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn out_writes_named_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports");
    for (format, ext) in [("json", "jsonl"), ("csv", "csv"), ("text", "txt")] {
        let o = run(&["catalog", "sup-deviation", "--format", format, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert!(o.stdout.is_empty());
        let written = std::fs::read_to_string(out.join(format!("sup-deviation.{ext}"))).unwrap();
        let direct = stdout(&run(&["catalog", "sup-deviation", "--format", format]));
        assert_eq!(written, direct);
    }
}

#[test]
fn unwritable_out_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let o = run(&["catalog", "sup-deviation", "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn csv_sweep_has_one_row_per_grid_point() {
    let o = run(&["funcseq", "--config", scenario("power-sweep.toml").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(headers, ["family", "domain_lo", "domain_hi", "r", "t", "n0", "verdict", "paper_k"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 27);
    for row in &rows {
        assert_eq!(&row[0], "power");
        assert_eq!(&row[5], &row[7], "index differs from the closed form in {row:?}");
    }
}

#[test]
fn csv_without_sweep_lists_records() {
    let o = run(&["catalog", "sup-deviation", "--format", "csv"]);
    let out = stdout(&o);
    assert!(out.starts_with("name,anchor,outcome,seed,plan\n"));
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn text_output_carries_anchor_and_plan() {
    let o = run(&["catalog", "open-sets", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("[PASS]"));
    assert_eq!(out.matches("    anchor: ").count(), 4);
    assert_eq!(out.matches("    plan: ").count(), 4);
}

#[test]
fn seed_precedence() {
    let cfg = scenario("axioms.toml");
    let path = cfg.to_str().unwrap();
    assert_eq!(header(&run(&["axioms", "--config", path]))["seed"], 7);
    let env = bin().args(["axioms", "--config", path]).env("IFN_SEED", "11").output().unwrap();
    assert_eq!(header(&env)["seed"], 11);
    let flag = bin().args(["axioms", "--config", path, "--seed", "13"]).env("IFN_SEED", "11").output().unwrap();
    assert_eq!(header(&flag)["seed"], 13);
    assert_eq!(header(&run(&["catalog", "sup-deviation"]))["seed"], 0);
}

#[test]
fn same_seed_same_bytes() {
    let a = stdout(&run(&["catalog", "continuity-algebra", "--seed", "1"]));
    let b = stdout(&run(&["catalog", "continuity-algebra", "--seed", "1"]));
    let c = stdout(&run(&["catalog", "continuity-algebra", "--seed", "2"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn example_scenarios_pass() {
    for (file, cmd) in [
        ("axioms.toml", "axioms"),
        ("converge.toml", "converge"),
        ("continuity.toml", "continuity"),
        ("uniform.toml", "uniform"),
        ("topology.toml", "topology"),
        ("funcseq.toml", "funcseq"),
        ("catalog.toml", "catalog"),
    ] {
        let o = run(&[cmd, "--config", scenario(file).to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{file}: {}", stdout(&o));
        assert!(!stdout(&o).contains("\"outcome\":\"fail\""), "{file}");
    }
}
