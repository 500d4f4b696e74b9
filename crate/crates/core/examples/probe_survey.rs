use ttpbraid::search::*;
use ttpbraid::groups::*;

fn main() {
    let t0 = std::time::Instant::now();
    let survey = z3z3_survey(DEFAULT_BUDGET).unwrap();
    println!("survey took {:?}", t0.elapsed());
    for (i, o) in survey.orbits.iter().enumerate() {
        println!(
            "orbit {i}: form {:?} degenerate={} solutions={} nondeg_unitary={} all_factor={}",
            o.form.a, o.degenerate_form, o.solutions, o.nondegenerate_unitary, o.all_factor_after_symmetry
        );
    }
    println!("survivors: {:?}", survey.survivors);
    println!("expected classes match: {}", survey.survivors_are_expected_classes);
}
