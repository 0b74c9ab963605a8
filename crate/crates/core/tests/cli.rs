use std::fs;
use std::process::Command;

fn swarmnet() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_swarmnet"));
    c.env_remove("SWARMNET_SEED").env_remove("SWARMNET_OUT");
    c
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let ok = swarmnet()
        .args(["bandwidth", "--out"])
        .arg(dir.path().join("bw"))
        .status()
        .unwrap();
    assert_eq!(ok.code(), Some(0));

    let usage = swarmnet().args(["simulate", "--network", "4g"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(1));

    let invalid = swarmnet()
        .args(["parse", "water the plants", "--out"])
        .arg(dir.path().join("p"))
        .output()
        .unwrap();
    assert_eq!(invalid.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&invalid.stderr).contains("keywords"));

    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let runtime = swarmnet()
        .args(["table1", "--iterations", "2", "--out"])
        .arg(blocker.join("inner"))
        .output()
        .unwrap();
    assert_eq!(runtime.status.code(), Some(2));
}

#[test]
fn environment_sits_between_flags_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.toml");
    fs::write(&cfg, "seed = 1\n[fleet]\nn_drones = 2\n").unwrap();
    let manifest_seed = |out: &str| {
        let text = fs::read_to_string(dir.path().join(out).join("manifest.toml")).unwrap();
        let v: toml::Table = toml::from_str(&text).unwrap();
        v["seed"].as_integer().unwrap()
    };

    let s = swarmnet()
        .arg("simulate")
        .arg(&cfg)
        .env("SWARMNET_OUT", dir.path().join("file"))
        .status()
        .unwrap();
    assert!(s.success());
    assert_eq!(manifest_seed("file"), 1);

    let s = swarmnet()
        .arg("simulate")
        .arg(&cfg)
        .env("SWARMNET_SEED", "5")
        .env("SWARMNET_OUT", dir.path().join("env"))
        .status()
        .unwrap();
    assert!(s.success());
    assert_eq!(manifest_seed("env"), 5);

    let s = swarmnet()
        .args(["simulate", "--seed", "9"])
        .arg(&cfg)
        .env("SWARMNET_SEED", "5")
        .env("SWARMNET_OUT", dir.path().join("flag"))
        .status()
        .unwrap();
    assert!(s.success());
    assert_eq!(manifest_seed("flag"), 9);
}

#[test]
fn simulate_report_shows_full_coverage_for_a_small_area() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.toml");
    fs::write(
        &cfg,
        "[mission]\nrequest = \"inspect the road for potholes in a 60 x 40 m area\"\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let s = swarmnet().arg("simulate").arg(&cfg).arg("--out").arg(&out).status().unwrap();
    assert!(s.success());
    let report = fs::read_to_string(out.join("report.md")).unwrap();
    assert!(report.contains("- Coverage: 1.000"), "{report}");
    assert!(report.contains("faults detected"));
}
