"""v-palindromes in arbitrary bases.

A natural number n is a v-palindrome in base b when b does not divide n,
n differs from its base-b reversal, and v(n) = v(reversal), where v sums
each prime appearing once and p + e for each prime power p^e with e >= 2.
"""

from vpal.digits import BaseDigits, from_digits, repeat_concat, reverse, to_digits
from vpal.factorization import EffortBudget, FactorCache, Factorization, FactorizationIncomplete, factorize, is_prime
from vpal.vcore import Verdict, VPalindromeReport, enumerate_v_palindromes, is_v_palindrome, min_v_palindrome, v_of

__all__ = [
    "BaseDigits",
    "EffortBudget",
    "FactorCache",
    "Factorization",
    "FactorizationIncomplete",
    "Verdict",
    "VPalindromeReport",
    "enumerate_v_palindromes",
    "factorize",
    "from_digits",
    "is_prime",
    "is_v_palindrome",
    "min_v_palindrome",
    "repeat_concat",
    "reverse",
    "to_digits",
    "v_of",
]
