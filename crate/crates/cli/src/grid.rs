use vibresp::spectral::Axis;

/// One waiting-time axis of a grid: a fixed value or a uniform range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridAxis {
    Fixed(f64),
    Range(Axis),
}

impl GridAxis {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("'{x}' is not a number"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(GridAxis::Fixed(num(v)?)),
            [start, step, count] => {
                let count = count
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| format!("'{count}' is not a count"))?;
                Axis::new(num(start)?, num(step)?, count)
                    .map(GridAxis::Range)
                    .map_err(|e| e.to_string())
            }
            _ => Err(format!("'{s}' is neither a value nor start:step:count")),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            GridAxis::Fixed(_) => 1,
            GridAxis::Range(a) => a.count,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        match self {
            GridAxis::Fixed(v) => *v,
            GridAxis::Range(a) => a.value(i),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GridAxis::Fixed(v) => format!("{v}"),
            GridAxis::Range(a) => format!("{}:{}:{}", a.start, a.step, a.count),
        }
    }
}

/// Waiting-time grid, one axis per interaction.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    pub axes: Vec<GridAxis>,
}

impl TimeGrid {
    /// Comma-separated axes, e.g. `0:0.1:64,1.0,0:0.1:64`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let axes = s
            .split(',')
            .map(GridAxis::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { axes })
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(GridAxis::len).product()
    }

    /// Times of flat index `idx`, the last axis running fastest.
    pub fn point(&self, mut idx: usize) -> Vec<f64> {
        let mut t = vec![0.0; self.axes.len()];
        for (slot, a) in t.iter_mut().zip(&self.axes).rev() {
            *slot = a.value(idx % a.len());
            idx /= a.len();
        }
        t
    }

    pub fn describe(&self) -> String {
        self.axes
            .iter()
            .map(GridAxis::describe)
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_orders_points() {
        let g = TimeGrid::parse("0:0.5:2, 1.0 ,0:1:3").unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.point(0), vec![0.0, 1.0, 0.0]);
        assert_eq!(g.point(2), vec![0.0, 1.0, 2.0]);
        assert_eq!(g.point(3), vec![0.5, 1.0, 0.0]);
    }

    #[test]
    fn rejects_bad_axes() {
        assert!(TimeGrid::parse("0:0:4").is_err());
        assert!(TimeGrid::parse("0:1").is_err());
        assert!(TimeGrid::parse("x").is_err());
        assert!(TimeGrid::parse("0:1:0").is_err());
    }
}
