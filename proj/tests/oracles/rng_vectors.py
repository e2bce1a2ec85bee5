# Independent reference for the counter-based generator test vectors.
M = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
    return z ^ (z >> 31)
def stream(key, count):
    return [mix64((key + i * GOLDEN) & M) for i in range(1, count + 1)]
def derive(key, tag):
    return mix64((mix64(key ^ 0x6A09E667F3BCC909) + tag * GOLDEN) & M)
def below(key, bound, count):
    out, i = [], 0
    threshold = ((1 << 64) - bound) % bound
    while len(out) < count:
        i += 1
        r = mix64((key + i * GOLDEN) & M)
        if r >= threshold:
            out.append(r % bound)
    return out
for k in (0, 42):
    print(k, [hex(v) for v in stream(k, 4)])
print("derive(42,1)", hex(derive(42, 1)), "derive(derive(42,1),7)", hex(derive(derive(42, 1), 7)))
print("uniform01 key 42 first:", repr((stream(42, 1)[0] >> 11) * 2.0**-53))
print("below(42, 10, 8)", below(42, 10, 8))
# Fisher-Yates on [0..5] with key 7: for i=n-1..1, j=below(i+1)
def perm(key, n):
    a = list(range(n)); c = 0
    def nxt():
        nonlocal c
        while True:
            c += 1
            r = mix64((key + c * GOLDEN) & M)
            return r
    for i in range(n - 1, 0, -1):
        bound = i + 1
        th = ((1 << 64) - bound) % bound
        while True:
            r = nxt()
            if r >= th: break
        j = r % bound
        a[i], a[j] = a[j], a[i]
    return a
print("perm(7, 6)", perm(7, 6))
