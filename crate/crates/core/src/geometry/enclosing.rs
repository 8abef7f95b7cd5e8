//! Smallest enclosing disk by Welzl's move-to-front iteration.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::polygon::Point;

#[derive(Debug, Clone, Copy)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    fn contains(&self, p: Point, eps: f64) -> bool {
        (p[0] - self.center[0]).hypot(p[1] - self.center[1]) <= self.radius + eps
    }
}

fn from_two(a: Point, b: Point) -> Disk {
    let center = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
    Disk { center, radius: 0.5 * (a[0] - b[0]).hypot(a[1] - b[1]) }
}

fn from_three(a: Point, b: Point, c: Point) -> Disk {
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = 2.0 * (bx * cy - by * cx);
    if d.abs() < 1e-300 {
        // Collinear: the widest pair decides.
        let cands = [from_two(a, b), from_two(a, c), from_two(b, c)];
        return cands.into_iter().max_by(|p, q| p.radius.partial_cmp(&q.radius).unwrap()).unwrap();
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    Disk { center: [a[0] + ux, a[1] + uy], radius: ux.hypot(uy) }
}

pub fn smallest_enclosing_disk(points: &[Point]) -> Disk {
    let mut pts = points.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    pts.shuffle(&mut rng);
    if pts.is_empty() {
        return Disk { center: [0.0, 0.0], radius: 0.0 };
    }
    let scale = pts.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    let eps = 1e-13 * scale;
    let mut disk = Disk { center: pts[0], radius: 0.0 };
    for i in 1..pts.len() {
        if disk.contains(pts[i], eps) {
            continue;
        }
        disk = Disk { center: pts[i], radius: 0.0 };
        for j in 0..i {
            if disk.contains(pts[j], eps) {
                continue;
            }
            disk = from_two(pts[i], pts[j]);
            for k in 0..j {
                if !disk.contains(pts[k], eps) {
                    disk = from_three(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    disk
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        use rand::Rng;
        for _ in 0..20 {
            let pts: Vec<Point> = (0..25).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-2.0..0.5)]).collect();
            let d = smallest_enclosing_disk(&pts);
            assert!(pts.iter().all(|&p| d.contains(p, 1e-12)));
            // Oracle: minimal radius over all pair and triple disks that cover everything.
            let mut best = f64::INFINITY;
            for a in 0..pts.len() {
                for b in a + 1..pts.len() {
                    let c = from_two(pts[a], pts[b]);
                    if pts.iter().all(|&p| c.contains(p, 1e-12)) {
                        best = best.min(c.radius);
                    }
                    for e in b + 1..pts.len() {
                        let c = from_three(pts[a], pts[b], pts[e]);
                        if pts.iter().all(|&p| c.contains(p, 1e-12)) {
                            best = best.min(c.radius);
                        }
                    }
                }
            }
            assert!((d.radius - best).abs() < 1e-10);
        }
    }
}
