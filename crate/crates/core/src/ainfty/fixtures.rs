//! Small structures with known answers, shipped as JSON under `fixtures/`.

use std::collections::BTreeMap;

use super::json::{DifferentialDoc, FamilyEntry, GeneratorDoc, OperationDoc, TwistedComplexDoc};
use super::AInftyDocument;

struct Doc(AInftyDocument);

/// `(from, to, [(generator, coefficient)])`.
type Differential<'a> = (i64, i64, &'a [(&'a str, &'a str)]);

impl Doc {
    fn algebra(basis: &[(&str, i64)]) -> Self {
        Self(AInftyDocument {
            objects: Vec::new(),
            generators: basis
                .iter()
                .map(|(n, d)| GeneratorDoc { name: n.to_string(), degree: *d, source: None, target: None })
                .collect(),
            operations: Vec::new(),
            identities: BTreeMap::new(),
            twisted_complexes: Vec::new(),
        })
    }

    fn category(objects: &[&str], gens: &[(&str, i64, &str, &str)]) -> Self {
        Self(AInftyDocument {
            objects: objects.iter().map(|o| o.to_string()).collect(),
            generators: gens
                .iter()
                .map(|(n, d, s, t)| GeneratorDoc {
                    name: n.to_string(),
                    degree: *d,
                    source: Some(s.to_string()),
                    target: Some(t.to_string()),
                })
                .collect(),
            operations: Vec::new(),
            identities: BTreeMap::new(),
            twisted_complexes: Vec::new(),
        })
    }

    fn op(mut self, inputs: &[&str], output: &[(&str, &str)]) -> Self {
        self.0
            .operations
            .push(OperationDoc { inputs: inputs.iter().map(|s| s.to_string()).collect(), output: vector(output) });
        self
    }

    /// `m_2(1, g) = g = m_2(g, 1)` for every generator `g` at `object`.
    fn unit(mut self, object: &str, unit: &str) -> Self {
        let at = |end: &Option<String>| end.as_deref().unwrap_or("*") == object;
        let gens = self.0.generators.clone();
        for g in &gens {
            if at(&g.source) {
                self = self.op(&[unit, &g.name], &[(&g.name, "1")]);
            }
            if at(&g.target) && g.name != unit {
                self = self.op(&[&g.name, unit], &[(&g.name, "1")]);
            }
        }
        self.0.identities.insert(object.to_string(), vector(&[(unit, "1")]));
        self
    }

    fn twisted(mut self, name: &str, family: &[i64], diffs: &[Differential]) -> Self {
        self.0.twisted_complexes.push(TwistedComplexDoc {
            name: name.to_string(),
            family: family.iter().map(|&i| FamilyEntry { index: i, object: "*".into() }).collect(),
            differentials: diffs
                .iter()
                .map(|(from, to, v)| DifferentialDoc { from: *from, to: *to, value: vector(v) })
                .collect(),
        });
        self
    }
}

fn vector(terms: &[(&str, &str)]) -> BTreeMap<String, String> {
    terms.iter().map(|(n, c)| (n.to_string(), c.to_string())).collect()
}

/// `Q[e]/(e²)` in degree 0.
pub fn dual_numbers() -> AInftyDocument {
    Doc::algebra(&[("1", 0), ("e", 0)]).unit("*", "1").0
}

/// `Λ[x]` with `|x| = 1` and zero differential.
pub fn exterior_algebra() -> AInftyDocument {
    Doc::algebra(&[("1", 0), ("x", 1)]).unit("*", "1").0
}

/// Unit plus an acyclic pair `d x = y`, all other products zero.
pub fn acyclic_dga() -> AInftyDocument {
    Doc::algebra(&[("1", 0), ("x", 0), ("y", 1)]).unit("*", "1").op(&["x"], &[("y", "1")]).0
}

/// `End(V)` for the acyclic complex `V = (Q e0 -> Q e1)`, `d e0 = e1`, with
/// `E_ab : e_b -> e_a` of degree `|e_a| − |e_b|`, product `a ∘ b` and
/// differential `[d, −]`.
pub fn endomorphism_dga() -> AInftyDocument {
    let mut doc = Doc::algebra(&[("E00", 0), ("E11", 0), ("E10", 1), ("E01", -1)])
        .op(&["E00"], &[("E10", "1")])
        .op(&["E11"], &[("E10", "-1")])
        .op(&["E01"], &[("E00", "1"), ("E11", "1")]);
    let idx = |n: &str| -> (u8, u8) { (n.as_bytes()[1] - b'0', n.as_bytes()[2] - b'0') };
    let names = ["E00", "E11", "E10", "E01"];
    for a in names {
        for b in names {
            let (i, j) = idx(a);
            let (k, l) = idx(b);
            if j == k {
                let out = format!("E{i}{l}");
                doc = doc.op(&[a, b], &[(&out, "1")]);
            }
        }
    }
    doc.0.identities.insert("*".into(), vector(&[("E00", "1"), ("E11", "1")]));
    doc.0
}

/// `M_2(Q)` in degree 0.
pub fn matrix_algebra() -> AInftyDocument {
    let names = ["E11", "E12", "E21", "E22"];
    let mut doc = Doc::algebra(&names.map(|n| (n, 0)));
    for a in names {
        for b in names {
            if a.as_bytes()[2] == b.as_bytes()[1] {
                let out = format!("E{}{}", a.as_bytes()[1] as char, b.as_bytes()[2] as char);
                doc = doc.op(&[a, b], &[(&out, "1")]);
            }
        }
    }
    doc.0.identities.insert("*".into(), vector(&[("E11", "1"), ("E22", "1")]));
    doc.0
}

/// `x` of degree 1, `y` of degree 2, `m_k(x, ..., x) = k·y` for `k = 1..=6`;
/// every identity holds because `y` is annihilated by all operations.
pub fn square_zero_ainfty() -> AInftyDocument {
    let mut doc = Doc::algebra(&[("x", 1), ("y", 2)]);
    for k in 1..=6 {
        let inputs = vec!["x"; k];
        doc = doc.op(&inputs, &[("y", &k.to_string())]);
    }
    doc.0
}

/// Degree-0 elements `1, a, u, e` and `h` of degree −1 with `m_1 h = e`,
/// `m_2(a, a) = u`, `m_2(u, a) = e` and `m_3(a, a, a) = −h`: `m_2` is not
/// associative, but the defect is exact.
pub fn homotopy_associative() -> AInftyDocument {
    Doc::algebra(&[("1", 0), ("a", 0), ("u", 0), ("e", 0), ("h", -1)])
        .unit("*", "1")
        .op(&["h"], &[("e", "1")])
        .op(&["a", "a"], &[("u", "1")])
        .op(&["u", "a"], &[("e", "1")])
        .op(&["a", "a", "a"], &[("h", "-1")])
        .0
}

/// Two objects; `Hom(X, Y)` is the acyclic complex `f -> g`.
pub fn two_object_acyclic() -> AInftyDocument {
    Doc::category(&["X", "Y"], &[("idX", 0, "X", "X"), ("idY", 0, "Y", "Y"), ("f", 0, "X", "Y"), ("g", 1, "X", "Y")])
        .unit("X", "idX")
        .unit("Y", "idY")
        .op(&["f"], &[("g", "1")])
        .0
}

/// Dual numbers with twisted complexes: `Q`, the cones of `e` and `1`, and
/// `Q -e-> Q -e-> Q`.
pub fn dual_numbers_twisted() -> AInftyDocument {
    Doc(dual_numbers())
        .twisted("P", &[0], &[])
        .twisted("Ce", &[0, 1], &[(0, 1, &[("e", "1")])])
        .twisted("C1", &[0, 1], &[(0, 1, &[("1", "1")])])
        .twisted("E3", &[0, 1, 2], &[(0, 1, &[("e", "1")]), (1, 2, &[("e", "1")])])
        .0
}

/// The homotopy associative algebra with `Q -a-> Q` and a three-term
/// complex whose Maurer–Cartan equation needs the homotopy `h`.
pub fn homotopy_twisted() -> AInftyDocument {
    Doc(homotopy_associative())
        .twisted("P", &[0], &[])
        .twisted("Ca", &[0, 1], &[(0, 1, &[("a", "1")])])
        .twisted("K", &[0, 1, 2], &[(0, 1, &[("u", "1")]), (1, 2, &[("a", "1")]), (0, 2, &[("h", "-1")])])
        .0
}

/// Every fixture that satisfies all identities, by file stem.
pub fn passing() -> Vec<(&'static str, AInftyDocument)> {
    vec![
        ("dual_numbers", dual_numbers()),
        ("exterior_algebra", exterior_algebra()),
        ("acyclic_dga", acyclic_dga()),
        ("endomorphism_dga", endomorphism_dga()),
        ("matrix_algebra", matrix_algebra()),
        ("square_zero_ainfty", square_zero_ainfty()),
        ("homotopy_associative", homotopy_associative()),
        ("two_object_acyclic", two_object_acyclic()),
        ("dual_numbers_twisted", dual_numbers_twisted()),
        ("homotopy_twisted", homotopy_twisted()),
    ]
}

/// `homotopy_associative` without its `m_3`: fails at arity 3.
pub fn missing_homotopy() -> AInftyDocument {
    let mut doc = homotopy_associative();
    doc.operations.retain(|op| op.inputs.len() != 3);
    doc
}

/// Dual numbers where `m_2(1, e)` picks up a stray `1`.
pub fn broken_unit() -> AInftyDocument {
    let mut doc = dual_numbers();
    for op in &mut doc.operations {
        if op.inputs == ["1", "e"] {
            op.output.insert("1".into(), "1".into());
        }
    }
    doc
}

/// `Q -e-> Q -1-> Q` over the dual numbers, which is not Maurer–Cartan.
pub fn bad_twisted() -> AInftyDocument {
    Doc(dual_numbers()).twisted("B", &[0, 1, 2], &[(0, 1, &[("e", "1")]), (1, 2, &[("1", "1")])]).0
}

/// Fixtures that must be rejected, by file stem.
pub fn failing() -> Vec<(&'static str, AInftyDocument)> {
    vec![("missing_homotopy", missing_homotopy()), ("broken_unit", broken_unit()), ("bad_twisted", bad_twisted())]
}
