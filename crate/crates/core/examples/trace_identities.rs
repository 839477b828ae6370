// Trace coordinates of random Haar pairs and the polynomial identities
// relating them.

use su2gap::geometry::{commutator_trace_of_square, fricke_commutator_trace, pi_map, TraceTriple};
use su2gap::su2::{commutator, haar_pair, Streams};

pub fn run_example() -> su2gap::Result<()> {
    let mut rng = Streams::new(1).stream(0);
    let mut worst: f64 = 0.0;
    println!("{:>10} {:>10} {:>10} {:>10}", "x", "y", "z", "tr[a,b]");
    for k in 0..1000 {
        let p = haar_pair(&mut rng);
        let tr = TraceTriple::of_pair(&p);
        let c = pi_map(&p);
        worst = worst.max((fricke_commutator_trace(tr) - c.t).abs());
        let sq = commutator(&(p.a * p.a), &p.b).trace();
        worst = worst.max((commutator_trace_of_square(c.x, c.t) - sq).abs());
        if k < 5 {
            println!("{:>10.6} {:>10.6} {:>10.6} {:>10.6}", tr.x, tr.y, tr.z, c.t);
        }
    }
    println!("largest identity residual over 1000 pairs: {worst:.3e}");
    assert!(worst < 1e-10);
    Ok(())
}

fn main() -> su2gap::Result<()> {
    run_example()
}
