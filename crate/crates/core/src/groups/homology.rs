use super::Presentation;

/// Exponent-sum relation matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<i128>> {
    p.relators()
        .iter()
        .map(|r| (0..p.num_generators()).map(|g| r.exponent_sum(g) as i128).collect())
        .collect()
}

/// Diagonal entries of the integer matrix after unimodular row and column
/// reduction. The entries are nonzero; their count is the rank.
pub fn diagonalize(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero pivot in the trailing block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut done = true;
            for i in t + 1..rows {
                let f = m[i][t] / p;
                if f != 0 {
                    let (top, bottom) = m.split_at_mut(i);
                    for (x, &y) in bottom[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                        *x -= f * y;
                    }
                }
                if m[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let f = m[t][j] / p;
                if f != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= f * row[t];
                    }
                }
                if m[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
            // a remainder is smaller than the pivot: move it into place
            let (i, j) = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("pivot row or column is nonzero");
            m.swap(t, i);
            for row in m.iter_mut() {
                row.swap(t, j);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Order of the abelianization if it is finite, otherwise 0.
pub fn h1_order(p: &Presentation) -> u128 {
    let diag = diagonalize(relation_matrix(p));
    if diag.len() < p.num_generators() {
        return 0;
    }
    diag.iter().map(|d| d.unsigned_abs()).product()
}

/// Free rank of the abelianization.
pub fn h1_rank(p: &Presentation) -> usize {
    p.num_generators() - diagonalize(relation_matrix(p)).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Word;

    #[test]
    fn cyclic_group() {
        let p = Presentation::from_parts(["a"], vec![Word::power_of(0, 3)]);
        assert_eq!(h1_order(&p), 3);
    }

    #[test]
    fn free_abelian_gives_zero() {
        let p = Presentation::from_parts(["a", "b"], vec![Word::new([(0, 2), (1, 4)])]);
        assert_eq!(h1_order(&p), 0);
        assert_eq!(h1_rank(&p), 1);
    }

    #[test]
    fn product_of_cyclics() {
        // Z/4 + Z/6 has order 24
        let p = Presentation::from_parts(["a", "b"], vec![Word::power_of(0, 4), Word::power_of(1, 6)]);
        assert_eq!(h1_order(&p), 24);
        // a^6 b^4, a^4 b^6: determinant 20
        let q = Presentation::from_parts(
            ["a", "b"],
            vec![Word::new([(0, 6), (1, 4)]), Word::new([(0, 4), (1, 6)])],
        );
        assert_eq!(h1_order(&q), 20);
    }
}
