//! Reports must not depend on how many workers walk the tree.

use mediant::render::{cmd_verify_with, to_json};
use mediant::shadows::{cw_shadow, verify_theorem, verify_theorem_with, ShadowMaps};
use mediant::topograph::verify_topograph_proof;
use mediant::{with_jobs, ExtendedRational, Mat2};

fn broken_farey(m: &Mat2) -> ExtendedRational {
    // wrong wherever the top-left entry exceeds 3
    let v = mediant::shadows::farey_shadow(m);
    if m.a() > &3u32.into() {
        v.recip()
    } else {
        v
    }
}

#[test]
fn reports_agree_across_job_counts() {
    let seq = with_jobs(Some(1), || (verify_theorem(11), verify_topograph_proof(11)));
    for jobs in [Some(2), Some(3), None] {
        let par = with_jobs(jobs, || (verify_theorem(11), verify_topograph_proof(11)));
        assert_eq!(to_json(&seq.0), to_json(&par.0), "{jobs:?}");
        assert_eq!(to_json(&seq.1), to_json(&par.1), "{jobs:?}");
    }
}

#[test]
fn first_failure_is_breadth_first_earliest_for_any_job_count() {
    let maps = ShadowMaps {
        cw: cw_shadow,
        farey: broken_farey,
    };
    let seq = with_jobs(Some(1), || verify_theorem_with(12, maps));
    assert!(seq.farey_failures > 0);
    let first = seq.first_failure_path.clone().expect("a failure");
    for jobs in [Some(2), Some(4), None] {
        let par = with_jobs(jobs, || verify_theorem_with(12, maps));
        assert_eq!(par.first_failure_path.as_ref(), Some(&first), "{jobs:?}");
        assert_eq!(par.farey_failures, seq.farey_failures);
        let outcome = cmd_verify_with(12, jobs, 20, maps).unwrap();
        assert_eq!(outcome.exit_code(), 1);
    }
}
