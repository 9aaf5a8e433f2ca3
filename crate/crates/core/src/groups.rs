//! Small finite groups as permutation groups, enough to build every group
//! algebra of order at most 12.

use std::collections::{BTreeSet, HashMap};

pub type Perm = Vec<usize>;

/// A finite group given by its elements as permutations; `elements[0]` is
/// the identity and the rest are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    name: String,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

fn compose(g: &[usize], h: &[usize]) -> Perm {
    // (g·h)(x) = g(h(x))
    h.iter().map(|&x| g[x]).collect()
}

impl Group {
    /// Closure of `gens` acting on `degree` points.
    pub fn from_generators(name: &str, degree: usize, gens: &[Perm]) -> Self {
        let id: Perm = (0..degree).collect();
        let mut seen: BTreeSet<Perm> = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                assert_eq!(g.len(), degree, "generator of the wrong degree");
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        // the identity permutation is the lexicographically smallest
        let elements: Vec<Perm> = seen.into_iter().collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Group {
            name: name.to_string(),
            elements,
            index,
        }
    }

    /// Group from a multiplication law on `0..order`, realised through its
    /// left regular action; `gens` are indices.
    pub fn from_law(name: &str, order: usize, law: impl Fn(usize, usize) -> usize, gens: &[usize]) -> Self {
        let perms: Vec<Perm> = gens
            .iter()
            .map(|&g| (0..order).map(|x| law(g, x)).collect())
            .collect();
        Self::from_generators(name, order, &perms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    /// Index of the product `elements[i] · elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&compose(&self.elements[i], &self.elements[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        let g = &self.elements[i];
        let mut inv = vec![0; g.len()];
        for (x, &y) in g.iter().enumerate() {
            inv[y] = x;
        }
        self.index[&inv]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Conjugacy classes as sorted index lists, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if done[x] {
                continue;
            }
            let class: BTreeSet<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, x), self.inverse(g)))
                .collect();
            for &c in &class {
                done[c] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    pub fn trivial() -> Self {
        Self::from_generators("C1", 1, &[])
    }

    pub fn cyclic(n: usize) -> Self {
        let gen: Perm = (0..n).map(|x| (x + 1) % n).collect();
        Self::from_generators(&format!("C{n}"), n, &[gen])
    }

    /// Dihedral group of order `2n`, the symmetries of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Perm = (0..n).map(|x| (x + 1) % n).collect();
        let refl: Perm = (0..n).map(|x| (n - x) % n).collect();
        Self::from_generators(&format!("D{n}"), n, &[rot, refl])
    }

    pub fn symmetric3() -> Self {
        let mut g = Self::dihedral(3);
        g.name = "S3".into();
        g
    }

    pub fn alternating4() -> Self {
        Self::from_generators("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
    }

    /// Dicyclic group of order `4n`: `a^(2n) = 1`, `x^2 = a^n`,
    /// `x a x^-1 = a^-1`. For `n = 2` this is the quaternion group.
    pub fn dicyclic(n: usize) -> Self {
        let m = 2 * n;
        // element a^k x^e is encoded as k + m·e
        let law = move |u: usize, v: usize| {
            let (k, e) = (u % m, u / m);
            let (l, f) = (v % m, v / m);
            if e == 0 {
                (k + l) % m + m * f
            } else if f == 0 {
                (k + m - l) % m + m
            } else {
                (k + m - l + n) % m
            }
        };
        let name = if n == 2 { "Q8".to_string() } else { format!("Dic{n}") };
        Self::from_law(&name, 2 * m, law, &[1, m])
    }

    pub fn quaternion8() -> Self {
        Self::dicyclic(2)
    }

    /// Direct product acting on the disjoint union of the point sets.
    pub fn product(a: &Group, b: &Group) -> Self {
        let da = a.elements[0].len();
        let db = b.elements[0].len();
        let mut gens = Vec::new();
        for g in a.elements.iter().skip(1) {
            let mut p: Perm = g.clone();
            p.extend(da..da + db);
            gens.push(p);
        }
        for h in b.elements.iter().skip(1) {
            let mut p: Perm = (0..da).collect();
            p.extend(h.iter().map(|&x| x + da));
            gens.push(p);
        }
        Self::from_generators(&format!("{}x{}", a.name, b.name), da + db, &gens)
    }

    /// Every group of order at most 12, one per isomorphism class.
    pub fn all_small() -> Vec<Group> {
        let c = Self::cyclic;
        let named = |mut g: Group, name: &str| {
            g.name = name.into();
            g
        };
        vec![
            Self::trivial(),
            c(2),
            c(3),
            c(4),
            named(Self::product(&c(2), &c(2)), "V4"),
            c(5),
            c(6),
            Self::symmetric3(),
            c(7),
            c(8),
            Self::product(&c(4), &c(2)),
            named(Self::product(&Self::product(&c(2), &c(2)), &c(2)), "C2^3"),
            Self::dihedral(4),
            Self::quaternion8(),
            c(9),
            Self::product(&c(3), &c(3)),
            c(10),
            Self::dihedral(5),
            c(11),
            c(12),
            Self::product(&c(6), &c(2)),
            Self::alternating4(),
            Self::dihedral(6),
            Self::dicyclic(3),
        ]
    }
}
