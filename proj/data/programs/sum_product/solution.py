import functools
import operator


def sum_product(numbers):
    return sum(numbers), functools.reduce(operator.mul, numbers, 1)
