//! Standard arrangements and regions used by tests, examples and the CLI.

use crate::arrangement::{Arrangement, Infinity};
use crate::exact::rational::{frac, int};
use crate::exact::{LinearFunctional, Rational};

pub fn lf(constant: i64, gradient: &[i64]) -> LinearFunctional {
    LinearFunctional::new(int(constant), gradient.iter().map(|&g| int(g)).collect())
}

pub fn point(coords: &[(i64, i64)]) -> Vec<Rational> {
    coords.iter().map(|&(n, d)| frac(n, d)).collect()
}

fn generic(n: usize, hyperplanes: Vec<LinearFunctional>) -> Arrangement {
    Arrangement::new(n, hyperplanes, Infinity::Generic).expect("fixture arrangement is valid")
}

/// `z - a`, `z - b`.
pub fn interval(a: Rational, b: Rational) -> Arrangement {
    generic(
        1,
        vec![
            LinearFunctional::new(-a, vec![int(1)]),
            LinearFunctional::new(-b, vec![int(1)]),
        ],
    )
}

/// `z_1, z_1 - 1, z_2, z_2 - 1, …`; the unit cube is the region at its centre.
pub fn hypercube(n: usize) -> Arrangement {
    let mut hs = Vec::new();
    for i in 0..n {
        let mut g = vec![0; n];
        g[i] = 1;
        hs.push(lf(0, &g));
        hs.push(lf(-1, &g));
    }
    generic(n, hs)
}

pub fn hypercube_centre(n: usize) -> Vec<Rational> {
    vec![frac(1, 2); n]
}

/// `z_1, z_2 - z_1, …, z_n - z_{n-1}, 1 - z_n`, bounding `0 ≤ z_1 ≤ … ≤ z_n ≤ 1`.
pub fn simplex(n: usize) -> Arrangement {
    let mut hs = Vec::new();
    for i in 0..n {
        let mut g = vec![0; n];
        g[i] = 1;
        if i > 0 {
            g[i - 1] = -1;
        }
        hs.push(lf(0, &g));
    }
    let mut g = vec![0; n];
    g[n - 1] = -1;
    hs.push(lf(1, &g));
    generic(n, hs)
}

pub fn simplex_interior(n: usize) -> Vec<Rational> {
    (1..=n).map(|k| frac(k as i64, n as i64 + 1)).collect()
}

/// Coordinate hyperplanes `z_1, …, z_n`; the positive quadrant is a region.
pub fn quadrant(n: usize) -> Arrangement {
    generic(
        n,
        (0..n)
            .map(|i| {
                let mut g = vec![0; n];
                g[i] = 1;
                lf(0, &g)
            })
            .collect(),
    )
}

/// `x`, `y`, `1 - x - y`.
pub fn unit_triangle() -> Arrangement {
    generic(2, vec![lf(0, &[1, 0]), lf(0, &[0, 1]), lf(1, &[-1, -1])])
}

/// The square pyramid with apex at the origin and base on `z = -1`:
/// `x - z`, `y - z`, `-x - z`, `-y - z`, `z + 1`.
pub fn square_pyramid() -> Arrangement {
    generic(
        3,
        vec![
            lf(0, &[1, 0, -1]),
            lf(0, &[0, 1, -1]),
            lf(0, &[-1, 0, -1]),
            lf(0, &[0, -1, -1]),
            lf(1, &[0, 0, 1]),
        ],
    )
}

pub fn square_pyramid_interior() -> Vec<Rational> {
    point(&[(0, 1), (0, 1), (-1, 2)])
}

/// Four lines through or near `(0, 1)`: `L_1: 17x - 10y + 10`, `L_2: x`,
/// `L_3: x + y - 1`, `L_4: y`. The shaded triangle is `x, y ≥ 0, x + y ≤ 1`.
pub fn four_lines() -> Arrangement {
    generic(
        2,
        vec![lf(10, &[17, -10]), lf(0, &[1, 0]), lf(-1, &[1, 1]), lf(0, &[0, 1])],
    )
}

pub fn four_lines_triangle() -> Vec<Rational> {
    point(&[(1, 4), (1, 4)])
}

/// Five lines `y = 0`, `y = 1 - x`, `y = 1 + 17x/10`, `y = 1/2 - x/4`, `x = 0`;
/// the second one is the line that cuts a bounded region in two.
pub fn five_lines() -> Arrangement {
    generic(
        2,
        vec![
            lf(0, &[0, 1]),
            lf(-1, &[1, 1]),
            lf(10, &[17, -10]),
            lf(2, &[-1, -4]),
            lf(0, &[1, 0]),
        ],
    )
}

/// Regular pentagon approximated by rational tangent lines; the origin is interior.
pub fn rational_pentagon() -> Arrangement {
    // outward normals close to (cos, sin) of 90° + 72°k, support value 1
    let normals = [(0, 100), (-95, 31), (-59, -81), (59, -81), (95, 31)];
    generic(
        2,
        normals
            .iter()
            .map(|&(a, b)| lf(100, &[-a, -b]))
            .collect(),
    )
}
