use cyclic_gv_web::{auto_cyclic_profile, bound_curve, pack_small};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn curve_matches_library() {
    let v = parse(bound_curve(1, 4, 300).unwrap());
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 299);
    let p61 = &pts[59];
    assert_eq!(p61["n"], 61);
    assert!((p61["log2_bound"].as_f64().unwrap() - 0.041_087_865_284_474_77f64.log2()).abs() < 1e-12);
    assert_eq!(p61["size_condition"], true);
    assert_eq!(pts[11]["size_condition"], false);
    assert_eq!(v["gv_rate"], "0.188721875540867");
    assert!(bound_curve(1, 2, 10).is_err());
    assert!(bound_curve(1, 4, 1).is_err());
}

#[test]
fn profile_of_weight_one_word() {
    let v = parse(auto_cyclic_profile("10000", 2, 5).unwrap());
    assert_eq!(v["auto_cyclic"], "2/5");
    assert_eq!(v["member"], true);
    assert_eq!(v["period"], 5);
    assert!(v["shifts"].as_array().unwrap().iter().all(|s| s["count"] == 2));
    let v = parse(auto_cyclic_profile("000000", 1, 2).unwrap());
    assert_eq!(v["auto_cyclic"], "infinite");
    assert_eq!(v["member"], true);
    assert!(auto_cyclic_profile("10a", 1, 4).is_err());
}

#[test]
fn pack_small_matches_library() {
    let v = parse(pack_small(5, 2, 5).unwrap());
    assert_eq!(v["cprime_size"], 32);
    assert_eq!(v["size"], 16);
    assert_eq!(v["rate_bound_holds"], true);
    let removed: u64 = v["steps"].as_array().unwrap().iter().map(|s| s["removed"].as_u64().unwrap()).sum();
    assert_eq!(removed, 32);
    assert_eq!(v["words"].as_array().unwrap().len(), 16);
    assert!(pack_small(17, 1, 4).is_err());
    assert!(pack_small(7, 3, 4).is_err());
}
