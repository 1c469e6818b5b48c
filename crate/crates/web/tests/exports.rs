use hz_web::{family_json, indices_json, scan_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn indices_of_a_sunflower() {
    let v = parse(indices_json("5 3\n0 1 2\n0 1 3\n0 1 4\n").unwrap());
    assert_eq!((v["hm1"].as_str(), v["hm2"].as_str()), (Some("147"), Some("243")));
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"][0]["degree_sum"], 7);
}

#[test]
fn indices_accept_json_input() {
    let v = parse(indices_json(r#"{"n": 2, "edges": [[0, 1]]}"#).unwrap());
    assert_eq!(v["hm1"], "4");
    assert_eq!(v["hm2"], "1");
}

#[test]
fn family_flags_the_mismatched_path_variant() {
    let v = parse(family_json("path:m=3,k=3").unwrap());
    assert_eq!(v["structural_hm1"], "57");
    assert!(v["hg"].as_str().unwrap().starts_with("7 3\n"));
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(verdicts.iter().any(|x| x["claimed"] == "86" && x["matches"] == false));
    assert!(verdicts.iter().any(|x| x["claimed"] == "57" && x["matches"] == true));
}

#[test]
fn scan_small_space() {
    let v = parse(scan_json("connected:n=3", 2).unwrap());
    assert_eq!(v["population"], 12);
    assert!(v["hm1"]["max"]["witnesses"].as_array().unwrap().len() <= 2);
}

#[test]
fn errors_come_back_as_text() {
    assert!(indices_json("3 1\n0 7\n").is_err());
    assert!(family_json("sunflower:m=2,p=3,k=3").is_err());
    assert!(scan_json("connected:n=5", 1).unwrap_err().contains("cap"));
}
