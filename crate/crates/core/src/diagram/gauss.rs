//! Signed Gauss codes and the canonical diagram hash.

use sha2::{Digest, Sha256};

use crate::diagram::pd::{Passage, PlanarDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Token {
    over: bool,
    id: usize,
    positive: bool,
}

fn tokens_from(d: &PlanarDiagram, start: Passage) -> Vec<Token> {
    let passages = d.passages_from(start);
    let mut ids = vec![usize::MAX; d.crossing_count()];
    let mut next = 1;
    passages
        .iter()
        .map(|p| {
            if ids[p.crossing] == usize::MAX {
                ids[p.crossing] = next;
                next += 1;
            }
            Token {
                over: p.is_over(),
                id: ids[p.crossing],
                positive: d.crossings()[p.crossing].is_positive(),
            }
        })
        .collect()
}

/// Lexicographically least rotation, with crossings numbered by first visit.
fn canonical_tokens(d: &PlanarDiagram) -> Vec<Token> {
    let passages = d.passages();
    passages
        .iter()
        .map(|&p| tokens_from(d, p))
        .min_by(|a, b| {
            // overs sort before unders
            let key = |t: &Token| (!t.over, t.id, !t.positive);
            a.iter().map(key).cmp(b.iter().map(key))
        })
        .unwrap_or_default()
}

fn render(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| {
            format!(
                "{}{}{}",
                if t.over { 'O' } else { 'U' },
                t.id,
                if t.positive { '+' } else { '-' }
            )
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Signed Gauss code such as `O1+,U2+,O3+,U1+,O2+,U3+`. The empty string
/// stands for the crossingless unknot.
pub fn gauss_code(d: &PlanarDiagram) -> String {
    render(&canonical_tokens(d))
}

/// Hex SHA-256 of the canonical Gauss code. Identifies a diagram up to
/// relabelling and choice of basepoint, not up to isotopy.
pub fn canonical_hash(d: &PlanarDiagram) -> String {
    let mut h = Sha256::new();
    h.update(b"pd-gauss:");
    h.update(gauss_code(d).as_bytes());
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builder::braid_closure;

    #[test]
    fn trefoil_code() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(gauss_code(&d), "O1+,U2+,O3+,U1+,O2+,U3+");
        assert_eq!(gauss_code(&PlanarDiagram::unknot()), "");
    }

    #[test]
    fn hash_ignores_labels() {
        let d = PlanarDiagram::parse("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        let e = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(canonical_hash(&d), canonical_hash(&e));
        assert_ne!(canonical_hash(&d), canonical_hash(&d.mirror()));
        assert_eq!(canonical_hash(&d).len(), 64);
    }
}
