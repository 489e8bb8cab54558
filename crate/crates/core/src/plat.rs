//! Plat closures of braid words: component tracing, canonical orientations,
//! crossing signs, and writhe.
//!
//! The diagram is laid out horizontally. A word of length L on 2n strands has
//! 2n rows of L+1 strand segments (one per column, columns split at the
//! crossings). Caps join rows (0,1), (2,3), … at both boundaries. Letter j
//! swaps rows |g|-1 and |g| between columns j and j+1.

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;

/// Traced plat closure of a braid word: the loop decomposition, a canonical
/// orientation per loop, per-letter crossing signs, and the writhe.
///
/// Orientation convention: every loop reverses direction only at caps, so it
/// touches the left boundary; each loop is oriented so that the even row of
/// its lowest-index left cap runs left-to-right. Cap membership of a loop is
/// unchanged by braid relations, far commutation, and free reduction, which
/// makes the resulting writhe invariant under those rewrites.
///
/// Crossing signs: letter g at a site where the two strands run through with
/// directions `da`, `db` (+1 = left-to-right) contributes
/// `-sign(g)·da·db`, so a positive kink ("1" in B_2) has writhe +1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlatDiagram {
    strands: usize,
    length: usize,
    components: usize,
    /// Component id per segment, indexed `row*(length+1) + col`.
    seg_component: Vec<usize>,
    /// Traversal direction per segment: +1 left-to-right, -1 right-to-left.
    seg_dir: Vec<i8>,
    /// Upper row index |g| per site (the site acts on rows |g|-1 and |g|).
    site_rows: Vec<usize>,
    crossing_signs: Vec<i8>,
    writhe: i64,
}

impl PlatDiagram {
    pub fn trace(word: &BraidWord) -> Self {
        let strands = word.strands();
        let length = word.len();
        let cols = length + 1;
        let nseg = strands * cols;
        let seg = |row: usize, col: usize| row * cols + col;

        // Row swap induced by letter j between columns j and j+1.
        let swap = |row: usize, j: usize| -> usize {
            let t = word.letters()[j].unsigned_abs() as usize;
            if row == t - 1 {
                t
            } else if row == t {
                t - 1
            } else {
                row
            }
        };

        let mut seg_component = vec![usize::MAX; nseg];
        let mut seg_dir = vec![0i8; nseg];
        let mut components = 0usize;

        // Anchor each loop at its lowest-index left cap; scanning cap rows in
        // order and skipping visited rows realizes exactly that anchor.
        for anchor in (0..strands).step_by(2) {
            if seg_component[seg(anchor, 0)] != usize::MAX {
                continue;
            }
            let id = components;
            components += 1;
            let (mut row, mut col, mut dir) = (anchor, 0usize, 1i8);
            loop {
                seg_component[seg(row, col)] = id;
                seg_dir[seg(row, col)] = dir;
                if dir == 1 {
                    if col == length {
                        // Right cap: partner row, reverse.
                        row ^= 1;
                        dir = -1;
                    } else {
                        row = swap(row, col);
                        col += 1;
                    }
                } else if col == 0 {
                    // Left cap: partner row, reverse.
                    row ^= 1;
                    dir = 1;
                } else {
                    row = swap(row, col - 1);
                    col -= 1;
                }
                if row == anchor && col == 0 && dir == 1 {
                    break;
                }
            }
        }
        debug_assert!(seg_component.iter().all(|&c| c != usize::MAX));

        let mut site_rows = Vec::with_capacity(length);
        let mut crossing_signs = Vec::with_capacity(length);
        let mut writhe = 0i64;
        for (j, &g) in word.letters().iter().enumerate() {
            let t = g.unsigned_abs() as usize;
            let da = seg_dir[seg(t - 1, j)] as i64;
            let db = seg_dir[seg(t, j)] as i64;
            let sign = -(g.signum() as i64) * da * db;
            site_rows.push(t);
            crossing_signs.push(sign as i8);
            writhe += sign;
        }

        PlatDiagram {
            strands,
            length,
            components,
            seg_component,
            seg_dir,
            site_rows,
            crossing_signs,
            writhe,
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word_length(&self) -> usize {
        self.length
    }

    /// Number of closed loops in the plat closure (always in 1..=strands/2).
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn num_segments(&self) -> usize {
        self.seg_component.len()
    }

    pub fn component_of(&self, row: usize, col: usize) -> usize {
        self.seg_component[row * (self.length + 1) + col]
    }

    /// Traversal direction of a segment: +1 left-to-right, -1 right-to-left.
    pub fn dir(&self, row: usize, col: usize) -> i8 {
        self.seg_dir[row * (self.length + 1) + col]
    }

    pub fn crossing_signs(&self) -> &[i8] {
        &self.crossing_signs
    }

    pub fn crossing_sign(&self, site: usize) -> i8 {
        self.crossing_signs[site]
    }

    /// Product of the two strand directions at a site: +1 means the strands
    /// run parallel through the crossing, -1 antiparallel.
    pub fn site_orientation_product(&self, site: usize) -> i8 {
        let t = self.site_rows[site];
        self.dir(t - 1, site) * self.dir(t, site)
    }

    pub fn writhe(&self) -> i64 {
        self.writhe
    }
}

/// Convenience wrapper: the writhe of the plat closure of `word`.
pub fn writhe(word: &BraidWord) -> i64 {
    PlatDiagram::trace(word).writhe()
}

/// Convenience wrapper: the number of components of the plat closure.
pub fn plat_components(word: &BraidWord) -> usize {
    PlatDiagram::trace(word).components()
}
