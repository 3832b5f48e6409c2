//! CLI harness shared by the golden tests and the acceptance runner.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use change_actions_cli::doc::{canonical, parse, ActionDoc, MapDoc, TowerMapDoc, Versioned};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

pub const BIN: &str = env!("CARGO_BIN_EXE_chact");

pub fn root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn chact(args: &[&str]) -> Run {
    let out = Command::new(BIN).current_dir(root()).args(args).output().expect("spawn chact");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub const F: &str = "tests/fixtures";

/// `(golden name, arguments, exit code)`; every case runs in both formats.
pub fn cases() -> Vec<(&'static str, Vec<String>, i32)> {
    let a = |s: &str| s.split_whitespace().map(|w| w.replace("@", F)).collect::<Vec<_>>();
    vec![
        ("check-action-z4", a("check-action @/z4.json"), 0),
        ("check-action-broken", a("check-action @/z4_bad_assoc.json"), 1),
        ("check-action-malformed", a("check-action @/malformed.json"), 2),
        ("check-action-missing", a("check-action @/no_such_file.json"), 2),
        ("check-action-cap", a("check-action @/z4.json --max-space 8"), 3),
        ("check-map-square", a("check-map --dom @/z5.json --cod @/z5.json @/square_z5.json"), 0),
        ("check-map-zeroed", a("check-map --dom @/z5.json --cod @/z5.json @/square_z5_zero.json"), 1),
        ("check-map-stable", a("check-map --dom @/z5.json --cod @/z5.json @/square_z5.json --require-stable"), 1),
        ("check-map-shape", a("check-map --dom @/z4.json --cod @/z5.json @/square_z5.json"), 2),
        ("fd-square", a("fd --expr x^2 --at 3 --delta 1"), 0),
        ("fd-cube", a("fd --expr x^3 --at 2 --delta 3"), 0),
        ("fd-constant", a("fd --expr 5 --at -4 --delta 9"), 0),
        ("fd-table", a("fd --expr x^2-x --table -2 3"), 0),
        ("fd-parse", a("fd --expr x^^2 --at 1"), 2),
        ("fd-no-point", a("fd --expr x"), 2),
        ("fd-cap", a("fd --expr x --table 0 100 --max-space 10"), 3),
        ("bool-and", a("bool --vars 2 --table 0001 --dvar 1"), 0),
        ("bool-xor", a("bool --vars 2 --table 0110 --dvar 2"), 0),
        ("bool-constant", a("bool --vars 3 --table 11111111 --dvar 3"), 0),
        ("bool-length", a("bool --vars 2 --table 011 --dvar 1"), 2),
        ("bool-dvar", a("bool --vars 2 --table 0110 --dvar 3"), 2),
        ("kpoly-boolean-square", a("kpoly --algebra boolean --poly x.x --dvar x --taylor"), 0),
        ("kpoly-tropical-star", a("kpoly --algebra tropical:10 --poly x* --taylor --regular"), 0),
        ("kpoly-tropical-nonadd", a("kpoly --algebra tropical:10 --nonadd"), 0),
        ("kpoly-unary-nonadd", a("kpoly --algebra unary:4 --nonadd"), 0),
        ("kpoly-binary", a("kpoly --algebra boolean --poly x.y+1 --dvar y"), 0),
        ("kpoly-binary-taylor", a("kpoly --algebra boolean --poly x.y --taylor"), 0),
        ("kpoly-binary-regular", a("kpoly --algebra boolean --poly x.y --regular"), 2),
        ("kpoly-parse", a("kpoly --algebra boolean --poly x.(y"), 2),
        ("kpoly-algebra", a("kpoly --algebra real --poly x"), 2),
        ("kpoly-constant", a("kpoly --algebra tropical:3 --poly x+7"), 2),
        ("tower-not", a("tower --model group:Z2 --map @/not_z2.json --depth 3 --check-assoc --check-id"), 0),
        (
            "tower-kleene-square",
            a("tower --model kleene:boolean --map @/square_poly.json --depth 2 --check-assoc --check-id"),
            0,
        ),
        ("tower-cap", a("tower --model group:Z2 --map @/not_z2.json --depth 5"), 3),
        ("tower-model", a("tower --model ring:Z2 --map @/not_z2.json --depth 1"), 2),
        ("tower-wrong-doc", a("tower --model kleene:boolean --map @/not_z2.json --depth 1"), 2),
        ("incr-square", a("incr --dom @/z5.json --cod @/z5.json @/square_z5.json --start 1 --changes 1,2"), 0),
        ("incr-empty", a("incr --dom @/z5.json --cod @/z5.json @/square_z5.json --start 3"), 0),
        ("incr-corrupt", a("incr --dom @/z5.json --cod @/z5.json @/square_z5_corrupt.json --start 1 --changes 1,2"), 1),
        ("incr-range", a("incr --dom @/z5.json --cod @/z5.json @/square_z5.json --start 9"), 2),
    ]
}

pub fn golden(path: &Path, actual: &str) -> Result<(), String> {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, actual).unwrap();
        return Ok(());
    }
    let expected = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{} differs:\n--- expected\n{expected}--- actual\n{actual}", path.display()))
    }
}

/// Runs every golden case in both formats; returns one message per mismatch.
pub fn golden_failures() -> Vec<String> {
    let mut failures = Vec::new();
    for (name, args, code) in cases() {
        for (format, ext) in [("text", "txt"), ("json", "json")] {
            let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
            full.extend(["--format", format]);
            let run = chact(&full);
            if run.code != code {
                failures.push(format!(
                    "{name} ({format}): exit {} instead of {code}\n{}{}",
                    run.code, run.stdout, run.stderr
                ));
                continue;
            }
            // Text errors go to stderr and nothing else is printed.
            let (shown, other) =
                if format == "text" && code >= 2 { (&run.stderr, &run.stdout) } else { (&run.stdout, &run.stderr) };
            if !other.is_empty() {
                failures.push(format!("{name} ({format}): unexpected output on the other stream: {other}"));
            }
            if format == "json" {
                match serde_json::from_str::<Value>(shown) {
                    Ok(v) if v["passed"] == Value::Bool(code == 0) => {}
                    Ok(v) => failures.push(format!("{name}: passed = {}", v["passed"])),
                    Err(e) => failures.push(format!("{name}: {e}")),
                }
            }
            let path: PathBuf = root().join("tests/golden").join(format!("{name}.{ext}"));
            if let Err(e) = golden(&path, shown) {
                failures.push(e);
            }
        }
    }
    failures
}

fn canonical_round_trip<T>(src: &str, what: &str) -> Result<(), String>
where
    T: Versioned + Serialize + DeserializeOwned + PartialEq + std::fmt::Debug,
{
    let err = |e: change_actions_cli::CliError| format!("{what}: {e}");
    let doc: T = parse(src, what).map_err(err)?;
    let once = canonical(&doc);
    let again: T = parse(&once, what).map_err(err)?;
    if again != doc || canonical(&again) != once {
        return Err(format!("{what}: canonical form does not round-trip"));
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("doc.json");
    fs::write(&path, &once).map_err(|e| e.to_string())?;
    let reread: T = parse(&fs::read_to_string(&path).map_err(|e| e.to_string())?, what).map_err(err)?;
    if canonical(&reread).as_bytes() != once.as_bytes() {
        return Err(format!("{what}: bytes differ after a write and re-read"));
    }
    Ok(())
}

/// Every fixture document re-parses from its canonical form to identical bytes.
pub fn round_trip_failures() -> Vec<String> {
    let fixture = |name: &str| fs::read_to_string(root().join(F).join(name)).unwrap();
    let mut out = Vec::new();
    for name in ["z4.json", "z5.json", "z4_bad_assoc.json", "z101.json"] {
        out.extend(canonical_round_trip::<ActionDoc>(&fixture(name), name).err());
    }
    for name in ["square_z5.json", "square_z5_zero.json", "square_z5_corrupt.json", "triple_z101.json"] {
        out.extend(canonical_round_trip::<MapDoc>(&fixture(name), name).err());
    }
    for name in ["not_z2.json", "square_poly.json"] {
        out.extend(canonical_round_trip::<TowerMapDoc>(&fixture(name), name).err());
    }
    out
}
