//! Permutation statistics behind the moment formulas: descents and cyclic
//! descents, zigzag and forth-back permutations, the sign `sn`, transits and
//! their equivalence classes, Eulerian numbers and set-partition counts.
//!
//! Permutations are 1-indexed throughout. Quantities with a closed form have
//! a `_brute` twin that enumerates `Sₙ`; the enumerations are only meant for
//! `n ≤ 10` or so.

mod euler;
mod forth_back;
mod partitions;
mod permutation;

pub use euler::{
    cdes, cyclic_descent_count, cyclic_descent_count_brute, des, des_pair, euler_polynomial, eulerian_number,
    eulerian_number_brute, eulerian_triangle, exceedance_statistic, is_zagzig, is_zigzag, zigzag_count_brute,
    zigzag_number, zigzag_numbers, EulerTables,
};
pub use forth_back::{
    cyclic_forth_back_map, equivalence_class, forth_back_count, forth_back_count_by_type,
    forth_back_count_by_type_brute, fundamental_transform, fundamental_transform_inverse, is_forth_back,
    permutations_of_type, sign_sn, sign_sum_by_type, sign_sum_by_type_brute, sign_sum_fixed_point_free,
    sign_sum_fixed_point_free_brute, transit_points,
};
pub use partitions::{
    factorial, for_each_set_partition, multinomial, partitions_of, set_partition_count, set_partition_count_brute,
    CycleType,
};
pub use permutation::{all_permutations, Permutation};
