//! Candidate coefficients, optimal weights and smoothness-indicator matrices for
//! right-edge reconstruction from 2k-1 cell averages (stencils ordered left to right).

pub(crate) const C2: [[f64; 2]; 2] = [[-1.0 / 2.0, 3.0 / 2.0], [1.0 / 2.0, 1.0 / 2.0]];
pub(crate) const D2: [f64; 2] = [1.0 / 3.0, 2.0 / 3.0];
pub(crate) const B2: [[[f64; 2]; 2]; 2] = [[[1.0, -1.0], [-1.0, 1.0]], [[1.0, -1.0], [-1.0, 1.0]]];
pub(crate) const LINEAR2: [f64; 3] = [-1.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0];

pub(crate) const C3: [[f64; 3]; 3] = [
    [1.0 / 3.0, -7.0 / 6.0, 11.0 / 6.0],
    [-1.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0],
    [1.0 / 3.0, 5.0 / 6.0, -1.0 / 6.0],
];
pub(crate) const D3: [f64; 3] = [1.0 / 10.0, 3.0 / 5.0, 3.0 / 10.0];
pub(crate) const B3: [[[f64; 3]; 3]; 3] = [
    [
        [4.0 / 3.0, -19.0 / 6.0, 11.0 / 6.0],
        [-19.0 / 6.0, 25.0 / 3.0, -31.0 / 6.0],
        [11.0 / 6.0, -31.0 / 6.0, 10.0 / 3.0],
    ],
    [
        [4.0 / 3.0, -13.0 / 6.0, 5.0 / 6.0],
        [-13.0 / 6.0, 13.0 / 3.0, -13.0 / 6.0],
        [5.0 / 6.0, -13.0 / 6.0, 4.0 / 3.0],
    ],
    [
        [10.0 / 3.0, -31.0 / 6.0, 11.0 / 6.0],
        [-31.0 / 6.0, 25.0 / 3.0, -19.0 / 6.0],
        [11.0 / 6.0, -19.0 / 6.0, 4.0 / 3.0],
    ],
];
pub(crate) const LINEAR3: [f64; 5] = [
    1.0 / 30.0,
    -13.0 / 60.0,
    47.0 / 60.0,
    9.0 / 20.0,
    -1.0 / 20.0,
];

pub(crate) const C4: [[f64; 4]; 4] = [
    [-1.0 / 4.0, 13.0 / 12.0, -23.0 / 12.0, 25.0 / 12.0],
    [1.0 / 12.0, -5.0 / 12.0, 13.0 / 12.0, 1.0 / 4.0],
    [-1.0 / 12.0, 7.0 / 12.0, 7.0 / 12.0, -1.0 / 12.0],
    [1.0 / 4.0, 13.0 / 12.0, -5.0 / 12.0, 1.0 / 12.0],
];
pub(crate) const D4: [f64; 4] = [1.0 / 35.0, 12.0 / 35.0, 18.0 / 35.0, 4.0 / 35.0];
pub(crate) const B4: [[[f64; 4]; 4]; 4] = [
    [
        [547.0 / 240.0, -647.0 / 80.0, 2321.0 / 240.0, -309.0 / 80.0],
        [
            -647.0 / 80.0,
            7043.0 / 240.0,
            -8623.0 / 240.0,
            3521.0 / 240.0,
        ],
        [
            2321.0 / 240.0,
            -8623.0 / 240.0,
            11003.0 / 240.0,
            -1567.0 / 80.0,
        ],
        [
            -309.0 / 80.0,
            3521.0 / 240.0,
            -1567.0 / 80.0,
            2107.0 / 240.0,
        ],
    ],
    [
        [89.0 / 80.0, -821.0 / 240.0, 267.0 / 80.0, -247.0 / 240.0],
        [
            -821.0 / 240.0,
            2843.0 / 240.0,
            -2983.0 / 240.0,
            961.0 / 240.0,
        ],
        [
            267.0 / 80.0,
            -2983.0 / 240.0,
            3443.0 / 240.0,
            -1261.0 / 240.0,
        ],
        [
            -247.0 / 240.0,
            961.0 / 240.0,
            -1261.0 / 240.0,
            547.0 / 240.0,
        ],
    ],
    [
        [
            547.0 / 240.0,
            -1261.0 / 240.0,
            961.0 / 240.0,
            -247.0 / 240.0,
        ],
        [
            -1261.0 / 240.0,
            3443.0 / 240.0,
            -2983.0 / 240.0,
            267.0 / 80.0,
        ],
        [
            961.0 / 240.0,
            -2983.0 / 240.0,
            2843.0 / 240.0,
            -821.0 / 240.0,
        ],
        [-247.0 / 240.0, 267.0 / 80.0, -821.0 / 240.0, 89.0 / 80.0],
    ],
    [
        [
            2107.0 / 240.0,
            -1567.0 / 80.0,
            3521.0 / 240.0,
            -309.0 / 80.0,
        ],
        [
            -1567.0 / 80.0,
            11003.0 / 240.0,
            -8623.0 / 240.0,
            2321.0 / 240.0,
        ],
        [
            3521.0 / 240.0,
            -8623.0 / 240.0,
            7043.0 / 240.0,
            -647.0 / 80.0,
        ],
        [-309.0 / 80.0, 2321.0 / 240.0, -647.0 / 80.0, 547.0 / 240.0],
    ],
];
pub(crate) const LINEAR4: [f64; 7] = [
    -1.0 / 140.0,
    5.0 / 84.0,
    -101.0 / 420.0,
    319.0 / 420.0,
    107.0 / 210.0,
    -19.0 / 210.0,
    1.0 / 105.0,
];
