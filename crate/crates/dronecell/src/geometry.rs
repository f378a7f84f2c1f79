//! Coordinate types, distance computations, and the square-cell grid layout.
//!
//! All positions are expressed in grid-global metres. Cells are squares of
//! edge length `l`; the grid is `k x k` with cell `(col, row)` centred at
//! `((col + 0.5) * l, (row + 0.5) * l)`. Cell ids run row-major from the
//! bottom-left corner.

use thiserror::Error;

/// A point on the ground plane, in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPoint {
    pub x: f64,
    pub y: f64,
}

impl GroundPoint {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Self { x, y }
    }
}

/// Drone position: ground projection plus fixed flying height and the
/// heading of its most recent movement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DronePose {
    pub ground: GroundPoint,
    /// Flying height in metres, constant over a trajectory.
    pub height_m: f64,
    /// Heading of the last movement, normalized to `[0, 2*pi)`.
    pub heading_rad: f64,
}

impl DronePose {
    pub fn new(ground: GroundPoint, height_m: f64, heading_rad: f64) -> Self {
        assert!(height_m > 0.0, "drone height must be positive");
        Self {
            ground,
            height_m,
            heading_rad: normalize_heading(heading_rad),
        }
    }
}

/// Wrap an angle into `[0, 2*pi)`.
pub fn normalize_heading(rad: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut a = rad % tau;
    if a < 0.0 {
        a += tau;
    }
    // `-1e-17 % tau` rounds to tau itself; fold that back to 0.
    if a >= tau {
        a = 0.0;
    }
    a
}

/// Axis-aligned square bounds of one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellBounds {
    pub min: GroundPoint,
    pub max: GroundPoint,
}

impl CellBounds {
    pub fn contains(&self, p: GroundPoint) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    /// Clamp a point onto the bounds (identity for interior points).
    pub fn clamp(&self, p: GroundPoint) -> GroundPoint {
        GroundPoint {
            x: p.x.clamp(self.min.x, self.max.x),
            y: p.y.clamp(self.min.y, self.max.y),
        }
    }

    pub fn center(&self) -> GroundPoint {
        GroundPoint {
            x: 0.5 * (self.min.x + self.max.x),
            y: 0.5 * (self.min.y + self.max.y),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid side count must be >= 1, got {0}")]
    SideCountZero(u32),
    #[error("grid side count must be odd so an inner center block exists, got {0}")]
    SideCountEven(u32),
    #[error("cell edge length must be positive, got {0}")]
    EdgeLength(f64),
}

/// The `k x k` layout of square cells.
#[derive(Debug, Clone)]
pub struct CellGrid {
    side_count: u32,
    edge_length_m: f64,
    centers: Vec<GroundPoint>,
    inner_cell_ids: Vec<usize>,
}

impl CellGrid {
    /// Build a `side_count x side_count` grid of square cells.
    ///
    /// Inner cells are those at least two tiers away from the boundary when
    /// `side_count >= 5` (the 3x3 center block for `side_count = 7`); for
    /// smaller grids every cell counts as inner.
    pub fn new(side_count: u32, edge_length_m: f64) -> Result<Self, GridError> {
        if side_count == 0 {
            return Err(GridError::SideCountZero(side_count));
        }
        if side_count % 2 == 0 {
            return Err(GridError::SideCountEven(side_count));
        }
        if !(edge_length_m > 0.0) {
            return Err(GridError::EdgeLength(edge_length_m));
        }
        let k = side_count as usize;
        let l = edge_length_m;
        let mut centers = Vec::with_capacity(k * k);
        let mut inner = Vec::new();
        for row in 0..k {
            for col in 0..k {
                centers.push(GroundPoint::new(
                    (col as f64 + 0.5) * l,
                    (row as f64 + 0.5) * l,
                ));
                let tier = col.min(row).min(k - 1 - col).min(k - 1 - row);
                if side_count < 5 || tier >= 2 {
                    inner.push(row * k + col);
                }
            }
        }
        Ok(Self {
            side_count,
            edge_length_m,
            centers,
            inner_cell_ids: inner,
        })
    }

    pub fn side_count(&self) -> u32 {
        self.side_count
    }

    pub fn edge_length_m(&self) -> f64 {
        self.edge_length_m
    }

    pub fn cell_count(&self) -> usize {
        self.centers.len()
    }

    pub fn centers(&self) -> &[GroundPoint] {
        &self.centers
    }

    pub fn center(&self, cell_id: usize) -> GroundPoint {
        self.centers[cell_id]
    }

    pub fn inner_cell_ids(&self) -> &[usize] {
        &self.inner_cell_ids
    }

    pub fn is_inner(&self, cell_id: usize) -> bool {
        self.inner_cell_ids.binary_search(&cell_id).is_ok()
    }

    pub fn cell_bounds(&self, cell_id: usize) -> CellBounds {
        let c = self.centers[cell_id];
        let half = 0.5 * self.edge_length_m;
        CellBounds {
            min: GroundPoint::new(c.x - half, c.y - half),
            max: GroundPoint::new(c.x + half, c.y + half),
        }
    }

    /// Cell that contains the point, if any (ties at shared edges go to the
    /// higher column/row so the squares partition the plane).
    pub fn cell_of(&self, p: GroundPoint) -> Option<usize> {
        let k = self.side_count as i64;
        let col = (p.x / self.edge_length_m).floor() as i64;
        let row = (p.y / self.edge_length_m).floor() as i64;
        if col < 0 || col >= k || row < 0 || row >= k {
            return None;
        }
        Some((row * k + col) as usize)
    }
}

/// 2D Euclidean distance between two ground points.
pub fn ground_distance(a: GroundPoint, b: GroundPoint) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// 3D distance from ground distance `r` and height `h`: `sqrt(r^2 + h^2)`.
pub fn euclidean_distance(r: f64, h: f64) -> f64 {
    debug_assert!(r >= 0.0 && h > 0.0);
    r.hypot(h)
}
