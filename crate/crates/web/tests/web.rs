use mvideal_web::{check_point_text, multiview_text, verify_text};

const THREE: &str = r#"{"kind":"translational","t":[[0,0,0],[1,0,0],[0,1,0]]}"#;
const TWO: &str = r#"{"kind":"translational","t":[[0,0,0],[1,0,0]]}"#;

#[test]
fn multiview_lists_four_generators() {
    assert_eq!(multiview_text(THREE, "elimination").unwrap().lines().count(), 4);
    assert_eq!(multiview_text(THREE, "").unwrap(), multiview_text(THREE, "focal_sum").unwrap());
    assert!(multiview_text(THREE, "magic").is_err());
}

#[test]
fn check_point_both_ways() {
    assert!(check_point_text(TWO, "((1,2,3),(2,2,3))").unwrap().starts_with("consistent"));
    assert!(check_point_text(TWO, "((1,2,3), (2,2,4))").unwrap().starts_with("not a consistent"));
    assert!(check_point_text(TWO, "((1,2,3))").is_err());
}

#[test]
fn verify_renders_a_report() {
    let r = verify_text(THREE, "thm_3_6", 0).unwrap();
    assert!(r.starts_with("thm_3_6 [confirmed]"));
    assert!(verify_text(THREE, "all", 0).is_err());
}
