// Per-level spectral gaps for three kinds of pairs, and the word-length
// bound on displacement.

use su2gap::spectral::{gap_profile, min_defect_level, random_unit_vector, word_defect_check, IrrepLevel};
use su2gap::su2::{haar_pair, Pair, SU2Element, Streams, Word};

pub fn run_example() -> su2gap::Result<()> {
    let s5 = 5f64.sqrt();
    let lps = Pair::new(
        SU2Element::from_quaternion(1.0 / s5, 2.0 / s5, 0.0, 0.0),
        SU2Element::from_quaternion(1.0 / s5, 0.0, 2.0 / s5, 0.0),
    );
    let commuting = Pair::new(
        SU2Element::diagonal(std::f64::consts::PI / 5.0),
        SU2Element::diagonal(2f64.sqrt()),
    );
    for (name, p) in [("identity", Pair::IDENTITY), ("commuting", commuting), ("quaternionic", lps)] {
        let prof = gap_profile(&p, 50)?;
        println!("{name:>12}: min gap {:.6} at level {}", prof.min_gap, prof.argmin_level);
    }

    let mut rng = Streams::new(4).stream(0);
    let p = haar_pair(&mut rng);
    let level = IrrepLevel(6);
    println!("random pair, level 6: min displacement {:.6}", min_defect_level(&p, level)?);
    let w: Word = "ABab".parse()?;
    let v = random_unit_vector(&mut rng, level.dim());
    let c = word_defect_check(&p, &w, level, &v)?;
    println!("|pi(w)v - v| = {:.6} <= {:.6} for w = {w}", c.lhs, c.rhs);
    Ok(())
}

fn main() -> su2gap::Result<()> {
    run_example()
}
