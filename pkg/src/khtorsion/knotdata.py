"""PD codes of a few table knots used in the tests and examples.

The 3_1, 4_1, 5_2 and 6_1 codes follow the usual knot-table listing
(sequential edge labels along the knot).  The 9_42 code was
reconstructed from the table DT code 4 8 10 -14 2 -16 -18 -6 -12 by a
planarity-driven embedding search and then verified: 9 crossings, one
component, determinant 7, homology width 3, and graded Euler
characteristic t^3 - t^2 + t - 1 + t^-1 - t^-2 + t^-3 (the classical
unit-coefficient Jones polynomial of 9_42).  It is given in the
chirality whose all-A smoothing has ladder heights (3, 2, 1, 1, 1, 1);
`KNOT_9_42_MIRROR` is the other chirality.
"""

KNOT_3_1 = "X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)"

KNOT_4_1 = "X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)"

KNOT_5_2 = "X(1,4,2,5),X(3,8,4,9),X(5,10,6,1),X(9,6,10,7),X(7,2,8,3)"

KNOT_6_1 = "X(1,4,2,5),X(7,10,8,11),X(3,9,4,8),X(9,3,10,2),X(5,12,6,1),X(11,6,12,7)"

HOPF_2 = "X(1,3,2,4),X(3,1,4,2)"

KNOT_9_42 = ("X(18,3,1,4),X(2,8,3,7),X(4,9,5,10),X(13,6,14,7),X(8,2,9,1),"
             "X(15,11,16,10),X(17,13,18,12),X(5,14,6,15),X(11,17,12,16)")

KNOT_9_42_MIRROR = ("X(18,4,1,3),X(2,7,3,8),X(4,10,5,9),X(13,7,14,6),"
                    "X(8,1,9,2),X(15,10,16,11),X(17,12,18,13),X(5,15,6,14),"
                    "X(11,16,12,17)")
