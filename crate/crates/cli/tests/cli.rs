use std::process::{Command, Output};

use geowb::fenchel_nielsen::OneHoledTorus;
use geowb_cli::config::ExperimentConfig;
use geowb_cli::plot::{fold_simple_geodesics, inside};
use serde_json::Value;

fn geowb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geowb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn simple_spectrum_csv_starts_at_modular_systole() {
    let o = geowb(&["spectrum", "--surface", "modular-torus", "--simple", "--cutoff", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# geowb "));
    assert!(text.contains("# surface = modular-torus"));
    let row = text.lines().find(|l| !l.starts_with('#') && !l.starts_with("slope")).unwrap();
    let length: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert!((length - 1.924847300238).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(geowb(&["spectrum", "--signature", "x"]).status.code(), Some(2));
    assert_eq!(geowb(&["spectrum", "--surface", "no-such-surface"]).status.code(), Some(2));
    assert_eq!(geowb(&["spectrum", "--surface", "torus:1,2"]).status.code(), Some(2));
    assert_eq!(geowb(&["plot", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(geowb(&["plot", "--surface", "genus2:2,2,2,0,0,0"]).status.code(), Some(2));
    assert_eq!(geowb(&["markov", "--bound", "0"]).status.code(), Some(2));
    assert_eq!(geowb(&["markov"]).status.code(), Some(2));
}

#[test]
fn identical_runs_give_identical_bytes() {
    let args = ["spectrum", "--surface", "torus:1.4,0.3,0.8", "--cutoff", "7"];
    let (a, b) = (geowb(&args), geowb(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["spectrum", "--surface", "genus2:2,2.5,3,0.3,0.7,-0.4", "--cutoff", "5", "--format", "json"];
    assert_eq!(geowb(&args).stdout, geowb(&args).stdout);
}

#[test]
fn torus_extremal_report() {
    let o = geowb(&["extremal", "--surface", "torus", "--boundary", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["geowb_version"].is_string());
    assert_eq!(v["config"]["boundary"], 0.0);
    let r = &v["result"];
    assert!((r["best_value"].as_f64().unwrap() - 1.92485).abs() < 1e-4);
    assert_eq!(r["witness_count"], 3);
}

#[test]
fn genus2_extremal_stays_below_bound() {
    let o = geowb(&["extremal", "--surface", "genus2", "--budget", "2", "--seed", "5"]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    let v = json(&o);
    assert!(v["result"]["best_value"].as_f64().unwrap() <= 3.05715);
    assert_eq!(v["config"]["budget"], 2);
}

#[test]
fn missing_budget_uses_documented_default() {
    let c = ExperimentConfig { command: "extremal".into(), surface: Some("genus2".into()), ..Default::default() };
    let c = c.resolve().unwrap();
    assert_eq!(c.budget, Some(geowb_cli::config::DEFAULT_GENUS2_STARTS));
    assert_eq!(c.seed, Some(1));
}

#[test]
fn markov_reports() {
    let v = json(&geowb(&["markov", "--bound", "30"]));
    assert_eq!(v["result"]["triple_count"], 5);
    let v = json(&geowb(&["markov", "--bound", "30", "--correspond", "200"]));
    assert_eq!(v["result"]["correspondence_status"], "exact match");
}

fn curve_count(svg: &str) -> usize {
    svg.matches(r#"class="curve""#).count()
}

#[test]
fn plot_draws_the_three_systoles() {
    let o = geowb(&["plot", "--surface", "modular-torus", "--slope-bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert_eq!(curve_count(&svg), 3);
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("slope_bound = 1"));

    let empty = stdout(&geowb(&["plot", "--slope-bound", "0"]));
    assert_eq!(curve_count(&empty), 0);
    assert!(empty.contains("<svg") && empty.trim_end().ends_with("</svg>"));

    let coarse = stdout(&geowb(&["plot", "--slope-bound", "3", "--resolution", "16"]));
    let fine = stdout(&geowb(&["plot", "--slope-bound", "3", "--resolution", "32"]));
    assert_eq!(curve_count(&coarse), curve_count(&fine));
    assert!(fine.len() > coarse.len());
}

fn cross(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> f64 {
    (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
}

// proper crossing of two chords, ignoring shared endpoints on polygon sides
fn chords_cross(s: &[[f64; 2]; 2], t: &[[f64; 2]; 2]) -> bool {
    let eps = 1e-9;
    cross(s[0], s[1], t[0]) * cross(s[0], s[1], t[1]) < -eps && cross(t[0], t[1], s[0]) * cross(t[0], t[1], s[1]) < -eps
}

#[test]
fn folded_segments_stay_in_the_polygon() {
    let tori = [
        OneHoledTorus::modular(),
        OneHoledTorus::new(1.3, 0.4, 0.0).unwrap(),
        OneHoledTorus::new(1.6, 1.9, 0.0).unwrap(),
        OneHoledTorus::new(2.0, 0.7, 1.5).unwrap(),
        OneHoledTorus::new(0.9, -0.3, 3.0).unwrap(),
        OneHoledTorus::new(0.4, 0.3, 6.0).unwrap(),
    ];
    for t in &tori {
        let p = fold_simple_geodesics(t, 6).unwrap();
        assert_eq!(p.curves.len(), 3 + 3 + 6 + 12 + 24 + 48);
        for c in &p.curves {
            assert!(!c.segments.is_empty());
            for (i, s) in c.segments.iter().enumerate() {
                for e in s {
                    assert!(inside(&p.polygon, *e, 1e-6), "slope {:?} endpoint {e:?}", c.slope);
                }
                // a simple curve never crosses itself
                for u in &c.segments[i + 1..] {
                    assert!(!chords_cross(s, u), "slope {:?} self-intersects", c.slope);
                }
            }
        }
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("geowb-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    let out = dir.join("out.json");
    std::fs::write(&cfg, "# markov run\ncommand = markov\nbound = 10\n").unwrap();
    let o = geowb(&["markov", "--config", cfg.to_str().unwrap(), "--bound", "30", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["bound"], 30);
    assert_eq!(v["result"]["triple_count"], 5);

    std::fs::write(&cfg, "command = spectrum\n").unwrap();
    assert_eq!(geowb(&["markov", "--config", cfg.to_str().unwrap(), "--bound", "3"]).status.code(), Some(2));
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(geowb(&["markov", "--config", cfg.to_str().unwrap(), "--bound", "3"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_cap_from_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_geowb"))
            .args(["markov", "--bound", "5"])
            .env("GEOWB_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(run("2").status.code(), Some(0));
    assert_eq!(run("none").status.code(), Some(2));
}

#[test]
fn capped_spectrum_is_inconclusive() {
    let o = geowb(&["spectrum", "--surface", "genus2:2,2.5,3,0.3,0.7,-0.4", "--cutoff", "9", "--budget", "50"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn other_reports() {
    let v = json(&geowb(&["gendulphe"]));
    assert!((v["result"]["root"].as_f64().unwrap() - 1.0694145347853462).abs() < 1e-12);
    let v = json(&geowb(&["bers", "--surface", "genus2:4,1,1.5,0.2,0,0.3"]));
    assert!(v["result"]["upper_bound"].as_f64().unwrap() < 4.0);
    let v = json(&geowb(&["huber", "--cutoff", "9"]));
    assert!(v["result"]["slope"].as_f64().is_some());
}
