use super::{cell_position, PipeDream};

impl PipeDream {
    fn row_columns(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n.saturating_sub(i)).filter(move |&j| self.has_cross(i, j))
    }

    /// Slide move `S_i`: if the leftmost cross `(i, j)` of row `i` is not in
    /// the first column and lies strictly right of every cross in row `i + 1`,
    /// it moves to `(i + 1, j - 1)`. When that cell already holds a cross the
    /// two merge. Otherwise the move acts as the identity.
    pub fn slide_move(&self, i: usize) -> PipeDream {
        if i == 0 || i + 1 > self.n {
            return *self;
        }
        let Some(j) = self.row_columns(i).next() else {
            return *self;
        };
        if j == 1 {
            return *self;
        }
        let rightmost_below = self.row_columns(i + 1).last().unwrap_or(0);
        if j <= rightmost_below {
            return *self;
        }
        let n = self.n;
        let mask = (self.mask & !(1 << cell_position(n, i, j))) | 1 << cell_position(n, i + 1, j - 1);
        PipeDream { n, mask }
    }

    /// Row indices whose slide move is not the identity.
    pub fn active_slides(&self) -> Vec<usize> {
        (1..self.n).filter(|&i| self.slide_move(i) != *self).collect()
    }

    /// Fixed by every slide move.
    pub fn is_quasi_yamanouchi(&self) -> bool {
        self.active_slides().is_empty()
    }

    /// Applies slide moves (lowest active row first) until quasi-Yamanouchi.
    pub fn destandardize(&self) -> PipeDream {
        self.destandardize_by(|active| active[0])
    }

    /// Destandardization with a caller-chosen move at every step; `pick`
    /// receives the nonempty list of active rows.
    pub fn destandardize_by(&self, mut pick: impl FnMut(&[usize]) -> usize) -> PipeDream {
        let mut p = *self;
        loop {
            let active = p.active_slides();
            if active.is_empty() {
                return p;
            }
            let i = pick(&active);
            debug_assert!(active.contains(&i));
            p = p.slide_move(i);
        }
    }
}
