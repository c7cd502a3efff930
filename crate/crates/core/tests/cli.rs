use std::path::PathBuf;

use clap::Parser;
use dgwb::cli::{execute, main_with_args, Cli, EXIT_INVALID};
use dgwb::harness::EXIT_IO;
use serde_json::{json, Value as Json};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Json {
    let cli = Cli::try_parse_from(std::iter::once("dgwb").chain(args.iter().copied())).unwrap();
    execute(&cli).unwrap().0.json
}

fn factors(table: &Json, deg: i64) -> Json {
    table["groups"][deg.to_string()]["factors"].clone()
}

#[test]
fn rgamma_of_a_torsion_ring_is_the_ring() {
    let j = run(&["rgamma", &data("kos8_free.json")]);
    assert_eq!(j["status"]["status"], "stable");
    assert_eq!(factors(&j["table"], 0), json!(["2"]));
    assert_eq!(factors(&j["table"], -1), json!(["2"]));
}

#[test]
fn llambda_orders_and_ladder() {
    let j = run(&["llambda", &data("cone_z4.json")]);
    assert_eq!(factors(&j["table"], 0), json!(["4"]));
    assert!(j["history"].as_array().unwrap().len() >= 3);
    let j = run(&["llambda", &data("kos8_free.json"), "--precision", "2"]);
    assert_eq!(j["ladder"].as_array().unwrap().len(), 2);
    let j = run(&["rgamma", &data("cone_z4.json"), "--order", "2"]);
    assert_eq!(j["order"], 2);
}

#[test]
fn dimensions_of_z_mod_4() {
    for cmd in ["injdim", "flatdim", "projdim"] {
        let j = run(&[cmd, &data("z_mod_4_complex.json")]);
        assert_eq!(j["value"], json!({"kind": "finite", "n": 1}), "{cmd}: {j}");
        assert!(!j["witnesses"].as_array().unwrap().is_empty());
        assert!(j.get("primes_used").is_some());
    }
    let j = run(&["flatdim", &data("f2_over_z4.json"), "--cutoff", "4"]);
    assert_eq!(j["value"], json!({"kind": "exceeds_cutoff", "n": 4}));
}

#[test]
fn ext_tor_and_snf() {
    let j = run(&["ext", &data("ext_z4.json")]);
    assert_eq!(factors(&j, 0), json!(["2"]));
    let j = run(&["tor", &data("tor_z.json")]);
    assert_eq!(factors(&j, 0), json!(["2"]));
    assert_eq!(factors(&j, 1), json!(["2"]));
    let j = run(&["snf", &data("matrix_z.json")]);
    assert_eq!(j["invariant_factors"], json!(["2", "6", "12"]));
}

#[test]
fn exit_codes() {
    let args = |xs: &[&str]| std::iter::once("dgwb").chain(xs.iter().copied()).map(String::from).collect::<Vec<_>>();
    assert_eq!(main_with_args(args(&["snf", "/nonexistent/matrix.json"])), EXIT_IO);
    assert_eq!(main_with_args(args(&["frobnicate"])), EXIT_INVALID);
    assert_eq!(main_with_args(args(&["snf", &data("cone_z4.json")])), EXIT_INVALID);
    let out = std::env::temp_dir().join(format!("dgwb-cli-{}.json", std::process::id()));
    let out_s = out.display().to_string();
    assert_eq!(main_with_args(args(&["verify", "--count", "4", "--json", &out_s])), 0);
    let written = std::fs::read_to_string(&out).unwrap();
    let golden = std::fs::read_to_string(data("../golden/suite_seed0_count4.json")).unwrap();
    assert_eq!(written, golden);
    std::fs::remove_file(out).unwrap();
    assert_eq!(main_with_args(args(&["verify", "--count", "0", "--json", "/nonexistent/out.json"])), EXIT_IO);
}
