use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use eicat::constructors::{regular_orbit_spec, stabilized_alpha_spec};

fn eicat(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eicat")).args(args).output().expect("run eicat");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files { dir: tempfile::tempdir().unwrap() }
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    /// Run `gen` and return the written file.
    fn generate(&self, name: &str, args: &[&str]) -> PathBuf {
        let p = self.path(name);
        let mut full = vec!["gen"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", path_str(&p)]);
        let (code, _, err) = eicat(&full);
        assert_eq!(code, 0, "{err}");
        p
    }

    fn biset(&self, name: &str, regular: bool) -> PathBuf {
        let spec = if regular { regular_orbit_spec() } else { stabilized_alpha_spec() };
        let src = self.write(&format!("{name}.spec.json"), &serde_json::to_string(&spec).unwrap());
        self.generate(name, &["biset", path_str(&src)])
    }
}

const CHAIN: &str = r#"{
  "objects": ["x", "y", "z"],
  "morphisms": [
    {"id": "1x", "src": "x", "dst": "x", "identity": true},
    {"id": "1y", "src": "y", "dst": "y", "identity": true},
    {"id": "1z", "src": "z", "dst": "z", "identity": true},
    {"id": "a", "src": "x", "dst": "y"},
    {"id": "b", "src": "y", "dst": "z"},
    {"id": "c", "src": "x", "dst": "z"}
  ],
  "composition": [["b", "a", "c"]]
}"#;

#[test]
fn validate_exit_codes() {
    let f = Files::new();
    let good = f.write("chain.json", CHAIN);
    assert_eq!(eicat(&["validate", path_str(&good)]).0, 0);

    let missing = f.write(
        "missing.json",
        &CHAIN.replace(r#"{"id": "1z", "src": "z", "dst": "z", "identity": true}"#, r#"{"id": "1z", "src": "z", "dst": "z"}"#),
    );
    let (code, json, _) = eicat(&["validate", path_str(&missing)]);
    assert_eq!(code, 1);
    let kinds: Vec<&str> = json["errors"].as_array().unwrap().iter().map(|e| e["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"MissingIdentity"), "{json}");

    let malformed = f.write("bad.json", "{ \"objects\": [");
    assert_eq!(eicat(&["validate", path_str(&malformed)]).0, 2);
    let unknown_key = f.write("extra.json", &CHAIN.replacen('{', "{\"extra\": 1,", 1));
    assert_eq!(eicat(&["validate", path_str(&unknown_key)]).0, 2);
}

#[test]
fn classify_reports() {
    let f = Files::new();
    let diamond = f.generate("diamond.json", &["poset", "diamond"]);
    let (code, json, _) = eicat(&["classify", path_str(&diamond), "--char", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json["gorenstein"], true);
    assert_eq!(json["one_gorenstein"], false);
    assert_eq!(json["gorenstein_dim_bound"], "n/a");
    assert!(json.get("explain").is_none());

    let z2 = f.generate("z2.json", &["group", "C2"]);
    let (_, json, _) = eicat(&["classify", path_str(&z2), "--char", "2"]);
    assert_eq!(json["zero_gorenstein"], true);
    assert_eq!(json["hereditary"], false);

    let stabilized = f.biset("stabilized.json", false);
    let (_, json, _) = eicat(&["classify", path_str(&stabilized), "--char", "2", "--explain"]);
    assert_eq!(json["gorenstein"], false);
    assert_eq!(json["witness"], "alpha");
    assert_eq!(json["explain"]["stabilizers"][0]["right_stabilizer"], 2);

    let chain = f.write("chain.json", CHAIN);
    let (_, json, _) = eicat(&["classify", path_str(&chain), "--explain"]);
    assert_eq!(json["gorenstein_dim_bound"], 1);
    assert_eq!(json["explain"]["mstar"].as_array().unwrap().len(), 2);

    assert_eq!(eicat(&["classify", path_str(&chain), "--char", "4"]).0, 2);
}

#[test]
fn oracle_verdicts() {
    let f = Files::new();
    let chain = f.write("chain.json", CHAIN);
    let (code, json, _) = eicat(&["oracle", path_str(&chain), "--char", "0"]);
    assert_eq!(code, 0);
    assert_eq!((json["left"].as_u64(), json["right"].as_u64(), json["gldim"].as_u64()), (Some(1), Some(1), Some(1)));
    assert_eq!(json["agrees"], true);

    let diamond = f.generate("diamond.json", &["poset", "diamond"]);
    let (_, json, _) = eicat(&["oracle", path_str(&diamond)]);
    assert_eq!((json["left"].as_u64(), json["right"].as_u64()), (Some(2), Some(2)));
    assert_eq!(json["agrees"], true);

    let stabilized = f.biset("stabilized.json", false);
    let (_, json, _) = eicat(&["oracle", path_str(&stabilized), "--char", "2", "--cap", "8"]);
    assert_eq!(json["left"], ">8");
    assert_eq!(json["agrees"], true);

    let (code, _, err) = eicat(&["oracle", path_str(&diamond), "--dim-limit", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("exceeds"), "{err}");
}

#[test]
fn matrix_export_round_trips() {
    let f = Files::new();
    let chain = f.write("chain.json", CHAIN);
    let out = f.path("chain.matrix.json");
    let (code, _, _) = eicat(&["matrix", path_str(&chain), "--out", path_str(&out)]);
    assert_eq!(code, 0);
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["vertex_dims"], serde_json::json!([1, 1, 1]));
    let bimodules: Vec<u64> = json["bimodule_dims"].as_array().unwrap().iter().map(|t| t[2].as_u64().unwrap()).collect();
    assert_eq!(bimodules, vec![1, 1, 1]);
    let (code, verdict, _) = eicat(&["oracle", path_str(&out)]);
    assert_eq!(code, 0);
    assert_eq!(verdict["left"], 1);
    assert_eq!(verdict["agrees"], Value::Null);

    let orbit = f.biset("orbit.json", true);
    let (_, json, _) = eicat(&["matrix", path_str(&orbit), "--char", "2"]);
    assert_eq!(json["structure"]["basis"].as_array().unwrap().len(), 5);
}

#[test]
fn generators() {
    let f = Files::new();
    let diamond = f.generate("diamond.json", &["poset", "diamond"]);
    let (_, json, _) = eicat(&["validate", path_str(&diamond)]);
    assert_eq!(json["objects"], 4);

    let group = f.write(
        "g.json",
        r#"{"elements": ["e", "s"], "identity": "e",
            "table": [["e","e","e"],["e","s","s"],["s","e","s"],["s","s","e"]]}"#,
    );
    let poset = f.write("p.json", r#"{"elements": ["l", "r", "t"], "relations": [["l", "t"], ["r", "t"]]}"#);
    let action = f.write(
        "a.json",
        r#"{"group": {"elements": ["e", "s"], "identity": "e",
                      "table": [["e","e","e"],["e","s","s"],["s","e","s"],["s","s","e"]]},
            "set": ["l", "r", "t"],
            "act": [["e","l","l"],["e","r","r"],["e","t","t"],["s","l","r"],["s","r","l"],["s","t","t"]]}"#,
    );
    let t = f.generate("t.json", &["transporter", path_str(&group), path_str(&poset), path_str(&action)]);
    let (code, json, _) = eicat(&["validate", path_str(&t)]);
    assert_eq!(code, 0);
    assert_eq!(json["is_ei"], true);

    let bad = f.write("chain2.json", r#"{"elements": ["l", "r"], "relations": [["l", "r"]]}"#);
    let swap = f.write(
        "swap.json",
        r#"{"group": {"elements": ["e", "s"], "identity": "e",
                      "table": [["e","e","e"],["e","s","s"],["s","e","s"],["s","s","e"]]},
            "set": ["l", "r"], "act": [["e","l","l"],["e","r","r"],["s","l","r"],["s","r","l"]]}"#,
    );
    let (code, _, err) = eicat(&["gen", "transporter", path_str(&group), path_str(&bad), path_str(&swap)]);
    assert_eq!(code, 1);
    assert!(err.contains("order preserving"), "{err}");

    assert_eq!(eicat(&["gen", "poset", "chain:x"]).0, 2);
}

#[test]
fn corpus_generation_is_deterministic() {
    let f = Files::new();
    let (a, b) = (f.path("a"), f.path("b"));
    for dir in [&a, &b] {
        let (code, _, err) = eicat(&["gen", "corpus", "--seed", "7", "--count", "30", "--out", path_str(dir)]);
        assert_eq!(code, 0, "{err}");
    }
    let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 30);
    for n in &names {
        let x = std::fs::read(a.join(n)).unwrap();
        let y = std::fs::read(b.join(n)).unwrap();
        assert_eq!(x, y);
        let (code, _, _) = eicat(&["validate", path_str(&a.join(n))]);
        assert_eq!(code, 0);
    }
}
