import pytest

QFT4_FRAGMENT = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[4];
t q[1];
cx q[0],q[2];
cx q[0],q[3];
"""

TWO_REGISTERS = """OPENQASM 2.0;
include "qelib1.inc";
qreg a[2];
qreg b[3];
creg c[3];
h a;
cx a[1],b[0];
rz(-pi/4) b[2];
u3(0.1, 2*pi/3, -0.5e-1) b[1];
barrier a,b[0];
measure b -> c;
"""


@pytest.fixture()
def qft4_fragment():
    return QFT4_FRAGMENT


@pytest.fixture()
def two_registers():
    return TWO_REGISTERS
