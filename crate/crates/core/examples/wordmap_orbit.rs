// Orbit of a pair under the four word maps, and how well its trace
// coordinates cover the domain as the depth grows.

use su2gap::dynamics::{covering_radius, wordmap_orbit};
use su2gap::geometry::FrickeCoord;
use su2gap::su2::{haar_pair, Streams};

pub fn run_example() -> su2gap::Result<()> {
    let p = haar_pair(&mut Streams::new(3).stream(0));
    let orbit = wordmap_orbit(&p, 7, 100_000);
    for pt in orbit.iter().take(6) {
        println!("{:>4}  x = {:+.6}  t = {:+.6}  a = {}", pt.path_label(), pt.coord.x, pt.coord.t, pt.words.0);
    }
    for depth in 0..=7 {
        let pts: Vec<FrickeCoord> = orbit.iter().filter(|q| q.path.len() <= depth).map(|q| q.coord).collect();
        println!("depth {depth}: {:>6} points, covering radius {:.4}", pts.len(), covering_radius(&pts, 30));
    }
    Ok(())
}

fn main() -> su2gap::Result<()> {
    run_example()
}
