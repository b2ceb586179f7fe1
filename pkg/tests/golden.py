"""Hand-transcribed reference arrays used across the test suite.

Each constant is the canonical text form of a known-good array, entered by
hand and independently checked cell by cell; symbolic slot labels (subset
pairs, super combinations) were converted with the library's declared
numeric slot-id maps.
"""

P4_TEXT = """\
DPDA K=4 L'=1 F=4 Z=2 S=4
2^2 * * 1^1
* 2^2 * 0^0
3^3 * 1^1 *
* 3^3 0^0 *
"""

P6_TEXT = """\
DPDA K=6 L'=1 F=12 Z=8 S=6
2^2 * * 1^1 * *
* 2^2 * 0^0 * *
3^3 * 1^1 * * *
* 3^3 0^0 * * *
4^4 * * * * 1^1
* 4^4 * * * 0^0
* * 4^4 * * 3^3
* * * 4^4 * 2^2
5^5 * * * 1^1 *
* 5^5 * * 0^0 *
* * 5^5 * 3^3 *
* * * 5^5 2^2 *
"""

P3_TEXT = """\
DPDA K=3 L'=1 F=3 Z=1 S=6
* 0^0 1^0
3^1 * 2^1
4^2 5^2 *
"""

P5_TEXT = """\
DPDA K=5 L'=1 F=15 Z=9 S=10
* 0^0 1^0 * *
3^1 * 2^1 * *
4^2 5^2 * * *
6^3 * * * 2^1
* 6^3 * * 4^2
* * 6^3 * 0^0
8^4 * * 2^1 *
* 8^4 * 4^2 *
* * 8^4 0^0 *
7^3 * * * 5^2
* 7^3 * * 1^0
* * 7^3 * 3^1
9^4 * * 5^2 *
* 9^4 * 1^0 *
* * 9^4 3^1 *
"""

# two-band stack of the 4-user base array (slots shifted by 4 in band 1)
Q_LIFTED_P4_TEXT = """\
DPDA K=4 L'=2 F=4 Z=2 S=8
2^2 * * 1^1
* 2^2 * 0^0
3^3 * 1^1 *
* 3^3 0^0 *
6^2 * * 5^1
* 6^2 * 4^0
7^3 * 5^1 *
* 7^3 4^0 *
"""

# grid family at q=3; super combination ((b,x),{y,z}) mapped to
# b*q*C(q,2) + x*C(q,2) + rank({y,z}) with rank {0,1}=0 {0,2}=1 {1,2}=2
GRID_Q3_TEXT = """\
DPDA K=6 L'=1 F=9 Z=3 S=18
* 0^3 1^3 * 9^0 10^0
0^3 * 2^3 * 12^1 13^1
1^3 2^3 * * 15^2 16^2
* 3^4 4^4 9^0 * 11^0
3^4 * 5^4 12^1 * 14^1
4^4 5^4 * 15^2 * 17^2
* 6^5 7^5 10^0 11^0 *
6^5 * 8^5 13^1 14^1 *
7^5 8^5 * 16^2 17^2 *
"""

# baseline family at K=4, t=2; slot of the 3-subset U with sender m is
# 3*rank(U) + index of m in U, with rank {0,1,2}=0 {0,1,3}=1 {0,2,3}=2
# {1,2,3}=3
JCM_K4_T2_TEXT = """\
DPDA K=4 L'=1 F=12 Z=6 S=12
* * 0^0 3^0
* 0^0 * 6^0
* 3^0 6^0 *
1^1 * * 9^1
4^1 * 9^1 *
7^2 10^2 * *
* * 1^1 4^1
* 2^2 * 7^2
* 5^3 8^3 *
2^2 * * 10^2
5^3 * 11^3 *
8^3 11^3 * *
"""

# a (3,1,6,4,3) array meeting both the rate floor and the K(K-1)
# packet-number floor at memory ratio (K-1)/K
MIN_F_K3_TEXT = """\
DPDA K=3 L'=1 F=6 Z=4 S=3
* * 0^0
* 0^0 *
1^1 * *
* * 1^1
* 2^2 *
2^2 * *
"""

SINGLE_STAR_TEXT = """\
DPDA K=1 L'=1 F=1 Z=1 S=0
*
"""
