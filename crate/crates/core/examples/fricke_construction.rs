// Explicit pairs with prescribed traces.

use su2gap::geometry::{construct_pair_from_fricke, construct_pair_from_traces, pi_map, TraceTriple};

pub fn run_example() -> su2gap::Result<()> {
    for (x, t) in [(0.0, 0.0), (1.0, -1.0), (-1.5, 0.25), (2.0, 2.0)] {
        let p = construct_pair_from_fricke(x, t)?;
        let c = pi_map(&p);
        println!("(x, t) = ({x:5}, {t:5}) -> a = {}, b = {}  back: ({:.12}, {:.12})", p.a, p.b, c.x, c.t);
    }
    let p = construct_pair_from_traces(0.5, -1.0, 0.25)?;
    let tr = TraceTriple::of_pair(&p);
    println!("triple (0.5, -1, 0.25) -> ({:.12}, {:.12}, {:.12})", tr.x, tr.y, tr.z);

    match construct_pair_from_fricke(0.5, -1.9) {
        Err(e) => println!("(0.5, -1.9): {e}"),
        Ok(_) => unreachable!("point lies below the parabola"),
    }
    Ok(())
}

fn main() -> su2gap::Result<()> {
    run_example()
}
