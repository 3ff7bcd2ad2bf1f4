import pytest

from caweave.seqcore import minimal_period

# Reference sequences shared across the tests.
SEQ30 = "101110110110001110000011010101"
SEQ14 = "11111001100001"
SEQ28 = "1110001001011011100111000111"
SEQ62 = "11101010100100001110011110100111011101000000110100110111100100"
PN4 = "111101011001000"
PN5 = "1111100011011101010000100101100"
PN5_SHIFTED = "1000010010110011111000110111010"

ACCEPTANCE_LINES = []


@pytest.fixture
def seq30():
    return minimal_period(SEQ30)


@pytest.fixture
def seq14():
    return minimal_period(SEQ14)


@pytest.fixture
def seq28():
    return minimal_period(SEQ28)


@pytest.fixture
def seq62():
    return minimal_period(SEQ62)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
