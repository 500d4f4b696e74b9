use ttpbraid::cyclo::CycNum;
use ttpbraid::groups::*;
use ttpbraid::search::*;

fn exp_table(cand: &ttpbraid::ybo::YboCandidate) -> Option<Vec<u32>> {
    cand.coeffs
        .iter()
        .map(|c| c.as_signed_root().and_then(|(s, k)| (s == 1).then_some(k)))
        .collect()
}

fn main() {
    let p = 3u32;
    let group = FiniteGroup::abelian(vec![p, p]).unwrap();
    let base = BaseAlgebra::plain(group.clone());
    for form in [vec![1u32, 0, 0, 1], vec![0, 1, 1, 0]] {
        println!("=== form {:?}", form);
        let alpha = Bihomomorphism::from_matrix(&group, p, ZmMatrix::new(p, 2, form)).unwrap();
        let ansatz = Ansatz::roots_of_unity(&group, p);
        let set = enumerate(&base, &alpha, &ansatz, DEFAULT_BUDGET).unwrap();
        println!("solutions: {}", set.len());
        let dedup = dedup_by_symmetry(
            &set,
            &[ActionKind::Character, ActionKind::Automorphism, ActionKind::SupportInversion, ActionKind::Conjugation],
        )
        .unwrap();
        let orbits = dedup.orbits.unwrap();
        println!("orbit classes: {}", orbits.len());
        for (ci, class) in orbits.iter().enumerate() {
            let has_product = class.members.iter().any(|&mi| is_gaussian_product(&set.solutions[mi].candidate, p));
            // print exponent tables of up to 2 members
            let ex: Vec<_> = class.members.iter().take(2)
                .map(|&mi| exp_table(&set.solutions[mi].candidate))
                .collect();
            println!("  class {ci}: size {} product_in_orbit={} sample exps {:?}", class.members.len(), has_product, ex);
        }
    }
    let _ = CycNum::one(3);
}
