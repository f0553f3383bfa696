use std::path::PathBuf;
use std::process::{Command, Output};

use cabelt_cli::config::SystemConfig;

fn cabelt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cabelt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn shipped_configs() -> Vec<PathBuf> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs"].iter().collect();
    let mut v: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

#[test]
fn afo_example_moves_lone_one() {
    let o = cabelt(&["apply", "--config", &config("afo_example.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "period=5 cells=[0,0,0,0,2]");
}

#[test]
fn unknown_generator_is_a_usage_error() {
    let o = cabelt(&["apply", "--system", "khat k=2", "--word", "Q", "--period", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown generator"));
}

#[test]
fn bad_subcommand_and_missing_source_exit_two() {
    assert_eq!(cabelt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cabelt(&["apply", "--word", "g1"]).status.code(), Some(2));
    assert_eq!(cabelt(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn empty_word_is_identity() {
    let input = "period=8 cells=[0,2,9,5,5,5,5,0]";
    let o = cabelt(&["apply", "--system", "khat k=2", "--word", "", "--input", input]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), input);
    let s = cabelt(&["spacetime", "--system", "khat k=2", "--word", "", "--input", input]);
    assert_eq!(stdout(&s).lines().count(), 1);
}

#[test]
fn text_spacetime_has_one_column_per_cell() {
    let o = cabelt(&["spacetime", "--config", &config("khat2.toml")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let cells = line.split(" | ").nth(1).unwrap_or_else(|| line.trim_start_matches(" |").trim_start_matches('|'));
        assert_eq!(cells.split_whitespace().count(), 8, "{line}");
    }
}

#[test]
fn renderings_are_deterministic() {
    for format in ["text", "svg", "tikz"] {
        let args = ["spacetime", "--config", &config("zz2z.toml"), "--format", format];
        let (a, b) = (cabelt(&args), cabelt(&args));
        assert_eq!(a.status.code(), Some(0), "{format}");
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
    let svg = stdout(&cabelt(&["spacetime", "--config", &config("zz2z.toml"), "--format", "svg"]));
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    let tikz = stdout(&cabelt(&["spacetime", "--config", &config("zz2z.toml"), "--format", "tikz"]));
    assert!(tikz.contains(r"\begin{tikzpicture}"));
}

#[test]
fn every_shipped_config_loads_and_round_trips() {
    for path in shipped_configs() {
        let text = std::fs::read_to_string(&path).unwrap();
        let cfg = SystemConfig::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        cfg.validate().unwrap();
        let once = cfg.to_text();
        let twice = SystemConfig::parse(&once).unwrap().to_text();
        assert_eq!(once, twice, "{}", path.display());
        let o = cabelt(&["list-generators", "--config", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", path.display());
        assert!(stdout(&o).contains("generator="));
    }
}

#[test]
fn unknown_keys_are_rejected() {
    let dir = std::env::temp_dir().join(format!("cabelt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "system = \"khat\"\n[khat]\nk = 2\ncolour = \"red\"\n").unwrap();
    let o = cabelt(&["list-generators", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    std::fs::write(&bad, "system = \"khat\"\n[khat]\nk = 2\n[neumann]\nkind = \"even\"\n").unwrap();
    assert_eq!(cabelt(&["list-generators", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(cabelt(&["list-generators", "--system", "khat k=2 colour=red"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn safety_check_reports_collisions() {
    let o = cabelt(&["safety-check", "--words", "1 0 1", "--n0", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("unsafe n0=4"));
    assert!(stdout(&o).contains("tape=1010"));
    let o = cabelt(&["safety-check", "--config", &config("afo_101.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "safe n0=5");
}

#[test]
fn afo_suite_passes() {
    let o = cabelt(&["verify", "--suite", "afo"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("suite=afo ") && l.contains(" status=pass")), "{text}");
    assert!(text.contains("check=retraction.n6"));
}

#[test]
fn corrupted_belt_map_fails_verification() {
    let o = cabelt(&["verify", "--suite", "belt", "--period", "3", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.contains("status=fail") && l.contains("corrupt")), "{text}");
    assert!(!text.lines().any(|l| l.contains("status=fail") && !l.contains("corrupt")), "{text}");
}

#[test]
fn custom_presentation_is_checked() {
    let o = cabelt(&["verify", "--config", &config("zz2z_relations.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check=non_relation[U]"));
}

#[test]
fn koracle_acts_on_coordinates() {
    let o = cabelt(&["apply", "--system", "koracle k=2 n=3", "--word", "", "--input", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1,2");
}
