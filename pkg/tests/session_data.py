"""Polynomials and displays taken from the worked sessions."""

RANDOM_A = (
    "3 a b^9 e^4 f  +  7 a^2 b^4 d^6 e f^4  +  4 a^4 b^6 c^5 d^11 f^4  +  "
    "6 a^6 b^3 c^14 f^2  +  5 a^11 e^6 f^6  +  b^8 e^7 f^12  +  2 b^10 d^10 f^4"
)
RANDOM_B = (
    "5 a c^2 e^8 f^7  +  4 a^2 b^5 c^6 e^3  +  7 a^2 b^7 c^4 d e^2  +  "
    "a^4 d^6 e^5 f  +  6 a^6 d^6 f^6  +  3 b^7 c^7 e^5  +  2 b^10 c^3 f^7"
)
A_PLUS_2B = (
    "3 a b^9 e^4 f  +  10 a c^2 e^8 f^7  +  7 a^2 b^4 d^6 e f^4  +  "
    "8 a^2 b^5 c^6 e^3  +  14 a^2 b^7 c^4 d e^2  +  4 a^4 b^6 c^5 d^11 f^4  +  "
    "2 a^4 d^6 e^5 f  +  6 a^6 b^3 c^14 f^2  +  12 a^6 d^6 f^6  +  "
    "5 a^11 e^6 f^6  +  6 b^7 c^7 e^5  +  b^8 e^7 f^12  +  4 b^10 c^3 f^7  +  "
    "2 b^10 d^10 f^4"
)
A_ZEROED = (
    "7 a^2 b^4 d^6 e f^4  +  4 a^4 b^6 c^5 d^11 f^4  +  6 a^6 b^3 c^14 f^2  +  "
    "5 a^11 e^6 f^6"
)
B_MOD2 = "a c^2 e^8 f^7  +  a^2 b^7 c^4 d e^2  +  a^4 d^6 e^5 f  +  b^7 c^7 e^5"
A_COEFFS = (3, 7, 4, 6, 5, 1, 2)
B_COEFFS = (5, 4, 7, 1, 6, 3, 2)

SMALL_A = "5 a c^3 + a^2 d^2 f^2 + 4 a^3 b e^3 + 3 b c f + 2 b^2 e^3"

XYZ_TEXT = "x^2 + 4 - 3*x*y*z"
XYZ_PRINT = "4  -  3 x y z  +  x^2"

DOUBLING_IN = (
    "a^2 c^10 d^2 f^2  +  7 a^3 d^5 e^14  +  6 a^5 c^7 d^4 e^2  +  4 a^8 c d^5 e^6  +  "
    "2 b^2 c^4 d^10 e^5 f  +  5 b^2 c^6 d^2 e^7 f^6  +  3 c^6 d^4 e^2 f^6"
)
DOUBLING_OUT = (
    "7 a^3 d^5 e^14  +  a^4 c^20 d^4 f^4  +  6 a^5 c^7 d^4 e^2  +  "
    "4 a^8 c d^5 e^6  +  5 b^2 c^6 d^2 e^7 f^6  +  2 b^4 c^8 d^20 e^10 f^2  +  "
    "3 c^12 d^8 e^4 f^12"
)
UPPER_IN = "3 + 5*a*b - 7*a*b*x^2 + 2*a*b^2*c*d*x*y -6*x*y + 8*a*b*c*d*x"
UPPER_PRINT = "3  +  5 a b  +  8 a b c d x  -  7 a b x^2  +  2 a b^2 c d x y  -  6 x y"
UPPER_OUT = "3  +  8 A B C D X  +  2 A B^2 C D X Y  +  5 a b  -  7 a b x^2  -  6 x y"

DOUBLING_SCRIPT = f"""\
a <- mvp("{DOUBLING_IN}")
pa <- powers(a)
va <- vars(a)
ca <- coeffs(a)
pa[ca<4] <- sapply(pa,double)[ca<4]
mvp(va,pa,ca)
"""

UPPER_SCRIPT = f"""\
a <- mvp("{UPPER_IN}")
a
pa <- powers(a)
va <- vars(a)
ca <- coeffs(a)
va[sapply(pa,length) > 4] <- sapply(va,toupper)[sapply(pa,length) > 4]
mvp(va,pa,ca)
"""

DISORD_SCRIPT = """\
a <- disord(9,4,7,1,2,6,3,8,5)
a
a^2
a+1/a
max(a)
sort(a)
try(a[1])
try(a[1] <- 1000)
x <- a + 1/a
x
y <- a*2-9
y
x+y
(b <- disord(2,3,8,1,5,6,9,7,4))
try(a+b)
a[a<0.5] <- 0  # round down
a
b[b>0.6] <- b[b>0.6] + 3  # add 3 to every element greater than 0.6
b
d <- disord(1:10)
d
e <- 10 + 3*d - d^2
e
e<4
d[e<4] <- e[e<4]
d
"""
