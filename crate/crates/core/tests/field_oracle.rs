//! Group algebras F_p[G] rebuilt from permutations and decided with linear
//! algebra over F_p, independently of the ring engine, then compared with it.

use nilary_core::ideal::{check_ideal_property, zero_ideal};
use nilary_core::{make_ring, parse_expr, Caps, Property};

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

/// Closure of the generators under composition.
fn generate(gens: &[Perm]) -> Vec<Perm> {
    let id: Perm = (0..gens[0].len()).collect();
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        for g in gens {
            let h = compose(&out[k], g);
            if !out.contains(&h) {
                out.push(h);
            }
        }
        k += 1;
    }
    out
}

struct Algebra {
    p: u32,
    n: usize,
    table: Vec<Vec<usize>>,
}

type Vector = Vec<u32>;

impl Algebra {
    fn new(p: u32, perms: Vec<Perm>) -> Algebra {
        let n = perms.len();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| perms.iter().position(|c| *c == compose(a, b)).unwrap()).collect())
            .collect();
        Algebra { p, n, table }
    }

    fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = vec![0; self.n];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                let k = self.table[i][j];
                out[k] = (out[k] + x * y) % self.p;
            }
        }
        out
    }

    fn unit(&self, g: usize) -> Vector {
        let mut v = vec![0; self.n];
        v[g] = 1;
        v
    }

    fn inv(&self, x: u32) -> u32 {
        (1..self.p).find(|y| x * y % self.p == 1).unwrap()
    }

    /// Reduced row echelon basis of the span.
    fn reduce(&self, rows: Vec<Vector>) -> Vec<Vector> {
        let mut rows = rows;
        let mut basis: Vec<Vector> = Vec::new();
        let mut col = 0;
        while col < self.n && !rows.is_empty() {
            if let Some(pos) = rows.iter().position(|r| r[col] != 0) {
                let mut pivot = rows.swap_remove(pos);
                let s = self.inv(pivot[col]);
                pivot.iter_mut().for_each(|x| *x = *x * s % self.p);
                for r in rows.iter_mut().chain(basis.iter_mut()) {
                    let f = r[col];
                    if f != 0 {
                        for (x, y) in r.iter_mut().zip(&pivot) {
                            *x = (*x + (self.p - f) * y) % self.p;
                        }
                    }
                }
                basis.push(pivot);
                rows.retain(|r| r.iter().any(|&x| x != 0));
            }
            col += 1;
        }
        basis.sort();
        basis
    }

    fn principal(&self, x: &Vector) -> Vec<Vector> {
        let mut rows = Vec::new();
        for g in 0..self.n {
            for h in 0..self.n {
                rows.push(self.mul(&self.mul(&self.unit(g), x), &self.unit(h)));
            }
        }
        self.reduce(rows)
    }

    fn product(&self, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
        let rows = a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        self.reduce(rows)
    }

    fn nilpotent(&self, a: &[Vector]) -> bool {
        let mut power = a.to_vec();
        loop {
            if power.is_empty() {
                return true;
            }
            let next = self.product(&power, a);
            if next == power {
                return false;
            }
            power = next;
        }
    }

    fn elements(&self) -> Vec<Vector> {
        let mut out = vec![vec![]];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|v: Vector| {
                    (0..self.p).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn principal_ideals(&self) -> Vec<Vec<Vector>> {
        let mut out: Vec<Vec<Vector>> = Vec::new();
        for x in self.elements() {
            let i = self.principal(&x);
            if !i.is_empty() && !out.contains(&i) {
                out.push(i);
            }
        }
        out
    }

    fn decide(&self, prop: Property) -> bool {
        let ps = self.principal_ideals();
        let nil: Vec<bool> = ps.iter().map(|i| self.nilpotent(i)).collect();
        for a in 0..ps.len() {
            for b in 0..ps.len() {
                if !self.product(&ps[a], &ps[b]).is_empty() {
                    continue;
                }
                let ok = match prop {
                    Property::Prime => false,
                    Property::Semiprime => a != b,
                    Property::Nilary | Property::PNilary => nil[a] || nil[b],
                    Property::RightPrimary => nil[b],
                    Property::LeftPrimary => nil[a],
                    Property::Essential => unreachable!(),
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

fn cyclic(n: usize) -> Vec<Perm> {
    generate(&[(0..n).map(|i| (i + 1) % n).collect()])
}

fn s3() -> Vec<Perm> {
    generate(&[vec![1, 0, 2], vec![1, 2, 0]])
}

fn d4() -> Vec<Perm> {
    generate(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
}

fn klein() -> Vec<Perm> {
    generate(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
}

const PROPS: [Property; 6] = [
    Property::Prime,
    Property::Semiprime,
    Property::Nilary,
    Property::PNilary,
    Property::RightPrimary,
    Property::LeftPrimary,
];

fn compare(expr: &str, p: u32, perms: Vec<Perm>) -> Vec<(Property, bool)> {
    let alg = Algebra::new(p, perms);
    let caps = Caps::default();
    let ring = make_ring(&parse_expr(expr).unwrap(), &caps).unwrap();
    let zero = zero_ideal(&ring);
    PROPS
        .iter()
        .map(|&prop| {
            let want = alg.decide(prop);
            let got = check_ideal_property(&ring, &zero, prop, &caps).unwrap().holds;
            assert_eq!(got, want, "{prop} on {expr}");
            (prop, want)
        })
        .collect()
}

fn value(v: &[(Property, bool)], p: Property) -> bool {
    v.iter().find(|(q, _)| *q == p).unwrap().1
}

#[test]
fn z2_s3_is_not_nilary() {
    let v = compare("Z2[S3]", 2, s3());
    assert!(!value(&v, Property::Nilary));
}

#[test]
fn z3_s3_against_linear_algebra() {
    let v = compare("Z3[S3]", 3, s3());
    assert!(!value(&v, Property::Prime));
    assert_eq!(value(&v, Property::Nilary), value(&v, Property::PNilary));
}

#[test]
fn z3_c6_is_not_nilary() {
    let v = compare("Z3[C6]", 3, cyclic(6));
    assert!(!value(&v, Property::Nilary));
}

#[test]
fn two_groups_in_characteristic_two() {
    for (expr, perms) in [("Z2[C4]", cyclic(4)), ("Z2[C2 x C2]", klein()), ("Z2[D4]", d4())] {
        let v = compare(expr, 2, perms);
        assert!(value(&v, Property::Nilary), "{expr}");
        assert!(value(&v, Property::RightPrimary), "{expr}");
        assert!(!value(&v, Property::Semiprime), "{expr}");
    }
}

#[test]
fn semisimple_cases() {
    let v = compare("Z5[C4]", 5, cyclic(4));
    assert!(value(&v, Property::Semiprime));
    assert!(!value(&v, Property::Nilary));
    let v = compare("Z2[C3]", 2, cyclic(3));
    assert!(value(&v, Property::Semiprime));
}
