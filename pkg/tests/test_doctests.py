import doctest

import pytest

from pretzeljsj import chainfill, extrat, grouppres, laurent


@pytest.mark.parametrize("module", [extrat, laurent, chainfill, grouppres])
def test_module_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
