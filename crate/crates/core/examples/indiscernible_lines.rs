use gpwb::embed::{generated_disjointness_probe, indiscernible_check, LineSequence};
use gpwb::kantor::symplectic_w;

fn main() -> gpwb::Result<()> {
    let w = symplectic_w(2)?;
    let base = 0;
    let skew: Vec<usize> = (0..w.num_lines())
        .filter(|&l| l != base && w.meet(l, base).is_none())
        .collect();
    println!("{} lines are skew to {}", skew.len(), w.line_name(base));

    for &m in &skew[1..4] {
        if w.meet(skew[0], m).is_some() {
            continue;
        }
        let seq = LineSequence::new(w.clone(), base, vec![skew[0], m])?;
        let v = indiscernible_check(&seq, 2)?;
        println!(
            "({}, {}): indiscernible = {}, {} witnesses",
            w.line_name(skew[0]),
            w.line_name(m),
            v.indiscernible,
            v.witnesses.len()
        );
        let probe = generated_disjointness_probe(&seq, &[0])?;
        println!("  generated by L and the first line: {} points; second line disjoint: {}", probe.generated.points.len(), probe.all_disjoint());
    }
    Ok(())
}
