# Reference values for the C++ test suite, computed at 40 digits with mpmath.
import mpmath as mp

mp.mp.dps = 40
I = mp.mpc(0, 1)


def theta(u, tau, d=0):
    s = 0
    for n in range(-40, 41):
        k = n + mp.mpf(1) / 2
        s += (-1) ** n * (2 * I * mp.pi * k) ** d * mp.exp(I * mp.pi * k * k * tau + 2 * I * mp.pi * k * u)
    return -I * s


def theta_mn(u, tau, m, n, N):
    x, y = mp.mpf(m) / N, mp.mpf(n) / N
    return mp.exp(I * mp.pi * x * x * tau + 2 * I * mp.pi * x * (u + y)) * theta(u + (m * tau + n) / N, tau)


def show(name, z):
    z = mp.mpc(z)
    print(f"{name}: {mp.nstr(z.real, 20)} {mp.nstr(z.imag, 20)}")


tau = I
show("theta(0.25, i)", theta(mp.mpf("0.25"), tau))
show("theta_10(0.3, i, N=3)", theta_mn(mp.mpf("0.3"), tau, 1, 0, 3))
t1, t3, t5 = theta(0, tau, 1), theta(0, tau, 3), theta(0, tau, 5)
show("mu'(0) at i", (t3 ** 2 - t1 * t5) / (6 * t1 ** 2))
q = mp.exp(I * mp.pi * tau)
show("jtheta1(pi/4, q) (same as theta(0.25, i))", mp.jtheta(1, mp.pi / 4, q))
show("lambda(i)", (mp.jtheta(2, 0, q) / mp.jtheta(3, 0, q)) ** 4)
show("lambda(0.1+i)", (mp.jtheta(2, 0, mp.exp(I * mp.pi * (I + mp.mpf('0.1')))) / mp.jtheta(3, 0, mp.exp(I * mp.pi * (I + mp.mpf('0.1'))))) ** 4)


# F0 for the leaf alpha1 (1/3, 0) (N = 3, (m,n) = (1,0)) at tau = i, alpha1 = 1/3:
# puncture t = tau/3, straight segment [0,1], a0 = alpha1/3.
def period_F0(alpha1, a0, t, tau, level=9):
    logd0 = mp.log(theta(0, tau, 1))
    # branch of log theta(u - t) at u = 0: ln|w| + i arg w (arg near arg(-t)) plus the continued log of
    # theta(s w)/(theta'(0) s w) along s in [0, 1]
    w = -t
    steps = 400
    acc = 0
    prev = 1
    for j in range(1, steps + 1):
        s = mp.mpf(j) / steps
        v = theta(s * w, tau) / (theta(0, tau, 1) * s * w)
        acc += mp.log(v / prev)
        prev = v
    base_minus = logd0 + mp.log(abs(w)) + I * mp.arg(w) + acc
    # tanh-sinh nodes on (0, 1), processed in increasing u to continue both logs
    h = mp.mpf(2) ** (-level)
    nodes = []
    kmax = int(mp.ceil(5 / h))
    for k in range(-kmax, kmax + 1):
        x = k * h
        sh = mp.pi / 2 * mp.sinh(x)
        u = (1 + mp.tanh(sh)) / 2
        wgt = h * mp.pi / 2 * mp.cosh(x) / mp.cosh(sh) ** 2 / 2
        if 0 < u < 1:
            nodes.append((u, wgt))
    nodes.sort(key=lambda p: p[0])
    total = 0
    u_prev = None
    for u, wgt in nodes:
        if u_prev is None:
            lp = logd0 + mp.log(u) + mp.log(theta(u, tau) / (theta(0, tau, 1) * u))
            lm = base_minus
            # tiny step from 0 to the first node
            vm = theta(u - t, tau)
            lm = lm + mp.log(vm / theta(-t, tau))
        else:
            vp = theta(u, tau)
            vm = theta(u - t, tau)
            lp = lp + mp.log(vp / pv)
            lm = lm + mp.log(vm / mv)
        pv, mv = theta(u, tau), theta(u - t, tau)
        u_prev = u
        total += wgt * mp.exp(alpha1 * (lp - lm) + 2 * I * mp.pi * a0 * u)
    return total


al = mp.mpf(1) / 3
show("F0 leaf (1,0) N=3 alpha1=1/3 tau=i", period_F0(al, al / 3, tau / 3, tau))
