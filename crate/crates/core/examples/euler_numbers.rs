//! Zigzag numbers, Eulerian numbers, Euler polynomials, cyclic descents and
//! the exceedance statistic.
//!
//! ```text
//! cargo run --example euler_numbers
//! ```

use sticky_hopf::combinatorics::{
    cyclic_descent_count, euler_polynomial, eulerian_number, exceedance_statistic, zigzag_count_brute,
    zigzag_numbers, EulerTables,
};

fn main() {
    let a = zigzag_numbers(16);
    println!("A_0..A_16: {}", a.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    println!("A_8 by enumeration: {}", zigzag_count_brute(8));

    for n in 1..=6 {
        let row: Vec<String> = euler_polynomial(n).iter().map(ToString::to_string).collect();
        println!("S_{n}(t) coefficients: {}", row.join(" "));
    }

    let n = 5;
    for j in 0..=n {
        println!(
            "n = {n}, j = {j}: cyclic descents {}, exceedances {}, <{n} {j}> = {}",
            cyclic_descent_count(n, j),
            exceedance_statistic(n, j),
            eulerian_number(n, j)
        );
    }

    let t = EulerTables::new(10);
    println!("from tables: A_10 = {}, <10 4> = {}", t.zigzag(10), t.eulerian(10, 4));
}
