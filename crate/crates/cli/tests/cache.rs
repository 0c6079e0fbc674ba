use codegree_core::builders::{build, GroupSpec};
use codegree_core::chartab::character_table;
use codegree_core::Config;
use codegree_lab::cache::{Cache, Lookup};

fn setup(spec: &GroupSpec) -> (tempfile::TempDir, Cache) {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let g = build(spec).unwrap();
    let t = character_table(&g, &Config::default()).unwrap();
    cache.store(spec, &t).unwrap();
    (dir, cache)
}

#[test]
fn round_trip_is_exact() {
    for spec in [GroupSpec::Sym(3), GroupSpec::Alt(5)] {
        let (_dir, cache) = setup(&spec);
        let g = build(&spec).unwrap();
        let fresh = character_table(&g, &Config::default()).unwrap();
        let (loaded, status) = cache.load(&spec, &g, &Config::default());
        assert_eq!(status, Lookup::Hit);
        let loaded = loaded.unwrap();
        assert_eq!(loaded.irreducibles(), fresh.irreducibles());
        assert_eq!(loaded.degrees(), fresh.degrees());
        assert_eq!(
            loaded.classes().representatives,
            fresh.classes().representatives
        );
        assert_eq!(loaded.classes().sizes, fresh.classes().sizes);
        assert_eq!(loaded.codegrees().unwrap(), fresh.codegrees().unwrap());
        let a = serde_json::to_string(&loaded.to_json("x").unwrap()).unwrap();
        let b = serde_json::to_string(&fresh.to_json("x").unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn corrupted_payload_is_recomputed() {
    let spec = GroupSpec::Alt(5);
    let (_dir, cache) = setup(&spec);
    let path = cache.path_for(&spec);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["payload"]["degrees"][1] = serde_json::json!(7);
    std::fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
    let g = build(&spec).unwrap();
    let (t, status) = cache.table(&spec, &g, &Config::default()).unwrap();
    assert_eq!(status, Lookup::Corrupt("checksum mismatch".into()));
    assert_eq!(t.degrees(), &[1, 3, 3, 4, 5]);
    assert_eq!(cache.load(&spec, &g, &Config::default()).1, Lookup::Hit);

    std::fs::write(&path, b"{ not json").unwrap();
    assert!(matches!(
        cache.load(&spec, &g, &Config::default()).1,
        Lookup::Corrupt(_)
    ));
}

#[test]
fn tampered_values_with_matching_checksum_are_rejected() {
    use sha2::Digest;
    let spec = GroupSpec::Sym(3);
    let (_dir, cache) = setup(&spec);
    let path = cache.path_for(&spec);
    let mut v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    v["payload"]["codegrees"][2] = serde_json::json!(6);
    let payload = serde_json::to_vec(&v["payload"]).unwrap();
    v["checksum"] = serde_json::json!(hex::encode(sha2::Sha256::digest(&payload)));
    std::fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
    let g = build(&spec).unwrap();
    assert!(matches!(
        cache.load(&spec, &g, &Config::default()).1,
        Lookup::Corrupt(_)
    ));
}

#[test]
fn stale_versions_are_ignored() {
    let spec = GroupSpec::Sym(3);
    let (_dir, cache) = setup(&spec);
    let path = cache.path_for(&spec);
    let mut v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    v["version"] = serde_json::json!(0);
    std::fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
    let g = build(&spec).unwrap();
    let (_, status) = cache.table(&spec, &g, &Config::default()).unwrap();
    assert_eq!(status, Lookup::Stale);
    assert_eq!(cache.load(&spec, &g, &Config::default()).1, Lookup::Hit);
}
