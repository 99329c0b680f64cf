//! Forth-back permutations, transits and equivalence classes, and the
//! sign sums that make odd moments vanish.
//!
//! ```text
//! cargo run --example permutation_lemmas
//! ```

use sticky_hopf::combinatorics::{
    all_permutations, equivalence_class, forth_back_count, forth_back_count_by_type, fundamental_transform,
    is_forth_back, partitions_of, sign_sn, sign_sum_by_type, sign_sum_fixed_point_free, transit_points,
    zigzag_number, Permutation,
};

fn main() -> sticky_hopf::Result<()> {
    for m in 1..=4 {
        let n = 2 * m;
        println!("n = {n}: forth-back {}, A_n = {}", forth_back_count(n), zigzag_number(n));
    }

    // The fundamental transform turns forth-back permutations into zigzag ones.
    for s in all_permutations(4).filter(is_forth_back) {
        println!("  {} -> {}", s.cycle_notation(), fundamental_transform(&s)?);
    }

    println!("forth-back counts by cycle type in S_8:");
    for t in partitions_of(4, 1) {
        let t = t.doubled();
        println!("  {t}: {}", forth_back_count_by_type(&t));
    }

    println!("sign sums over fixed-point-free permutations:");
    for n in 2..=8 {
        println!("  n = {n}: {}", sign_sum_fixed_point_free(n));
    }
    println!("type (2,4): {}", sign_sum_by_type(&sticky_hopf::combinatorics::CycleType::new(vec![2, 4])?)?);

    // An 8-cycle with transits: its class has balanced signs.
    let s = Permutation::parse_cycles(8, "(4,1,8,2,6,7,5,3)")?;
    println!("{} = {s}, transits {:?}", s.cycle_notation(), transit_points(&s));
    let class = equivalence_class(&s)?;
    for c in &class {
        println!("  {}  sign {:+}", c.cycle_notation(), sign_sn(c));
    }
    Ok(())
}
