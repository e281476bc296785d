use lrpkit::verify::{verify_suite, verify_suite_exec};
use lrpkit::Exec;

fn names(p: u32, n: usize, d: usize) -> Vec<String> {
    let r = verify_suite(p, n, d, 1).unwrap();
    assert!(r.passed, "{}", r.to_table());
    r.checks.into_iter().map(|c| c.name).collect()
}

#[test]
fn p2_n1() {
    assert!(names(2, 1, 4).len() >= 10);
}

#[test]
fn p3_n1_names_the_gamma_two_point() {
    assert!(names(3, 1, 4).iter().any(|n| n == "twisted bimodule variety is {[1:1]} for gamma=2"));
}

#[test]
fn p2_n2_names_the_swap_variety() {
    assert!(names(2, 2, 3).iter().any(|n| n == "swap-twisted bimodule variety, 3 points"));
}

#[test]
fn p3_n2() {
    names(3, 2, 3);
}

#[test]
fn p5_n1() {
    names(5, 1, 4);
}

#[test]
#[ignore = "about half a minute; run with --ignored"]
fn p5_n2() {
    names(5, 2, 4);
}

#[test]
fn unsupported_grid_points() {
    assert!(verify_suite(7, 1, 2, 0).is_err());
    assert!(verify_suite(2, 3, 2, 0).is_err());
}

#[test]
fn reports_do_not_depend_on_the_execution_mode_or_run() {
    let seq = verify_suite_exec(2, 1, 3, 42, Exec::Sequential).unwrap();
    let par = verify_suite_exec(2, 1, 3, 42, Exec::Parallel).unwrap();
    assert_eq!(seq, par);
    assert_eq!(par, verify_suite(2, 1, 3, 42).unwrap());
}
