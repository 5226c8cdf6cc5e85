//! Published values for a few known strings, compared against computed
//! ones. Disagreements are reported as flagged diffs and never fail a run.

use serde::Serialize;

pub struct ReferenceString {
    pub label: &'static str,
    pub order: u128,
    pub schlafli: &'static [u64],
    pub f_vector: &'static [u128],
    pub layers: &'static [usize],
}

pub const REFERENCES: [ReferenceString; 3] = [
    ReferenceString {
        label: "degree-27 group of order 1296, type [4,3,4]",
        order: 1296,
        schlafli: &[4, 3, 4],
        f_vector: &[1, 27, 81, 81, 27, 1],
        layers: &[4, 9, 17, 28, 42, 60, 81, 105, 129, 147, 157, 155, 138, 109, 71, 33, 9, 1],
    },
    ReferenceString {
        label: "3·Sym(6), unravelled string of type [4,5,4]",
        order: 2160,
        schlafli: &[4, 5, 4],
        f_vector: &[1, 18, 135, 13, 18, 1],
        layers: &[4, 9, 18, 34, 61, 108, 162, 218, 303, 358, 373, 276, 154, 70, 9, 2],
    },
    ReferenceString {
        label: "3·Sym(7), unravelled string of type [4,6,4]",
        order: 15120,
        schlafli: &[4, 6, 4],
        f_vector: &[1, 63, 945, 945, 63, 1],
        layers: &[
            4, 9, 18, 34, 62, 113, 204, 366, 601, 963, 1454, 2036, 2562, 2696, 2005, 1219, 514, 188, 57, 10, 4, 1,
        ],
    },
];

pub fn lookup(order: u128, schlafli: &[u64]) -> Option<&'static ReferenceString> {
    REFERENCES.iter().find(|r| r.order == order && r.schlafli == schlafli)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlaggedDiff {
    pub field: String,
    pub published: serde_json::Value,
    pub computed: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceComparison {
    pub label: &'static str,
    pub diffs: Vec<FlaggedDiff>,
}

fn diff<T: Serialize + PartialEq>(out: &mut Vec<FlaggedDiff>, field: String, published: T, computed: T) {
    if published != computed {
        out.push(FlaggedDiff {
            field,
            published: serde_json::to_value(published).expect("serializable"),
            computed: serde_json::to_value(computed).expect("serializable"),
        });
    }
}

/// Compares what was computed; `layers` is `None` when the disc structure
/// was skipped.
pub fn compare(r: &ReferenceString, f_vector: Option<&[u128]>, layers: Option<&[usize]>) -> ReferenceComparison {
    let mut diffs = Vec::new();
    if let Some(f) = f_vector {
        for (i, (&p, &c)) in r.f_vector.iter().zip(f).enumerate() {
            diff(&mut diffs, format!("f_vector[{i}]"), p, c);
        }
        if f.len() != r.f_vector.len() {
            diff(&mut diffs, "f_vector.len".into(), r.f_vector.len(), f.len());
        }
    }
    if let Some(l) = layers {
        for (i, (&p, &c)) in r.layers.iter().zip(l).enumerate() {
            diff(&mut diffs, format!("layers[{}]", i + 1), p, c);
        }
        diff(&mut diffs, "diameter".into(), r.layers.len(), l.len());
        let published_sum: u128 = 1 + r.layers.iter().map(|&x| x as u128).sum::<u128>();
        diff(&mut diffs, "chambers".into(), published_sum, r.order);
    }
    ReferenceComparison { label: r.label, diffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_tables_have_the_expected_sums() {
        let sums: Vec<usize> = REFERENCES.iter().map(|r| 1 + r.layers.iter().sum::<usize>()).collect();
        assert_eq!(sums, vec![1296, 2160, 15121]);
    }

    #[test]
    fn reports_only_disagreements() {
        let r = lookup(2160, &[4, 5, 4]).unwrap();
        let c = compare(r, Some(&[1, 18, 135, 135, 18, 1]), Some(r.layers));
        assert_eq!(c.diffs.len(), 1);
        assert_eq!(c.diffs[0].field, "f_vector[3]");
        assert!(lookup(2160, &[4, 6, 4]).is_none());
    }
}
