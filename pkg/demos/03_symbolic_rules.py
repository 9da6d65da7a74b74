"""
Symbolic deformed differentiation
=================================

Parse, differentiate, simplify, and confirm identities by numeric sampling.
"""

from deformcalc.symbolic import (
    Add,
    Mul,
    cd_symbolic,
    check_identity,
    dcd_symbolic,
    derivative,
    evaluate,
    parse,
    simplify,
    to_text,
)

e = parse("x^2 + sin(x)")
print("parsed:", repr(e))
print("printed:", to_text(e))
print("d/dx:", to_text(derivative(e)))

# alpha stays symbolic unless a value is given
print("cd  x^2             ->", to_text(cd_symbolic(parse("x^2"))))
print("cd  x^2, alpha=0.5  ->", to_text(cd_symbolic(parse("x^2"), alpha=0.5)))
print("dcd exp(x)          ->", to_text(dcd_symbolic(parse("exp(x)"))))
print("dcd qexp(2-alpha,x) ->", to_text(dcd_symbolic(parse("qexp(2 - alpha, x)"))))
print("simplify x^(1-alpha)*x ->", to_text(simplify(parse("x^(1 - alpha)*x"))))

# dual Leibniz rule D~(FG) = G^alpha D~F + F^alpha D~G with F = x, G = x^2
F, G = parse("x"), parse("x^2")
lhs = dcd_symbolic(Mul(F, G), alpha=0.5)
rhs = parse(f"(x^2)^0.5*({to_text(dcd_symbolic(F, alpha=0.5))}) + x^0.5*({to_text(dcd_symbolic(G, alpha=0.5))})")
print("D~(FG) at x=2:", evaluate(lhs, {"x": 2.0}), "=", evaluate(rhs, {"x": 2.0}))
print(check_identity(lhs, rhs, {"x": (1.0, 3.0)}, name="dual-leibniz"))

# the dual derivative is not additive
sum_rule = check_identity(
    dcd_symbolic(Add(F, G), alpha=0.5),
    Add(dcd_symbolic(F, alpha=0.5), dcd_symbolic(G, alpha=0.5)),
    {"x": (1.0, 3.0)},
    name="additivity",
)
print("additivity holds?", sum_rule.passed, " worst relative gap", sum_rule.max_residual)
