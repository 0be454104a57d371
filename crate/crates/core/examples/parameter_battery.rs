use gpwb::params::{check_parameters, is_sum_of_two_squares, Param, ParamQuery};

fn main() -> gpwb::Result<()> {
    let queries = [
        (8, Param::Finite(2), Param::Finite(2)),
        (4, Param::Finite(5), Param::Finite(2)),
        (3, Param::Finite(6), Param::Finite(6)),
        (6, Param::Finite(2), Param::Finite(8)),
        (4, Param::Finite(2), Param::Infinite),
        (4, Param::Finite(7), Param::Infinite),
    ];
    for (n, s, t) in queries {
        let report = check_parameters(&ParamQuery::new(n, s, t)?);
        print!("{report}");
        println!();
    }
    let sums: Vec<u64> = (1..=30).filter(|&m| is_sum_of_two_squares(m)).collect();
    println!("sums of two squares up to 30: {sums:?}");
    Ok(())
}
