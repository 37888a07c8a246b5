"""Reference vectors for the hash-based primitives, computed with hashlib/hmac only."""
import hashlib
import hmac
import struct


def h(data):
    return hashlib.sha256(data).digest()


def mac(key, data):
    return hmac.new(key, data, hashlib.sha256).digest()


def drbg_bytes(seed, n):
    key = h(b"qnio-drbg" + seed)
    out = b""
    i = 0
    while len(out) < n:
        out += mac(key, struct.pack(">Q", i))
        i += 1
    return out[:n]


def drbg_fork_seed(seed, label):
    return mac(h(b"qnio-drbg" + seed), b"fork:" + label.encode())


def prf(key, x):
    return mac(key, x)[:16]


def ggm_half(s, side):
    return h(s + bytes([side]))[:16]


def ggm(key, x, width):
    node = key
    for i in range(width):
        node = ggm_half(node, (x >> (width - 1 - i)) & 1)
    return node


def prg(seed, n):
    out = b""
    i = 0
    while len(out) < n:
        out += mac(seed, struct.pack(">I", i))
        i += 1
    return out[:n]


def commit(m, r):
    return prg(r, 32) + mac(r, m)


def oracle_uniform(seed, x):
    return mac(seed, b"G" + x)[:16], mac(seed, b"I" + x)[0] & 1


def seal(label, plaintext):
    kl = mac(h(b"qnio harness sealing key v1"), label.encode())
    nonce = mac(kl, b"nonce" + plaintext)[:16]
    ks = mac(kl, b"stream" + nonce)
    stream = b""
    i = 0
    while len(stream) < len(plaintext):
        stream += mac(ks, struct.pack(">Q", i))
        i += 1
    return nonce + bytes(a ^ b for a, b in zip(plaintext, stream))


def envelope(kind, payload):
    body = b"QNK1" + struct.pack(">III", 1, kind, len(payload)) + payload
    return body + h(body)


if __name__ == "__main__":
    k = bytes(range(16))
    print("drbg(be64 1, 40)", drbg_bytes(struct.pack(">Q", 1), 40).hex())
    print("drbg fork(be64 7, 'x') then 16", drbg_bytes(drbg_fork_seed(struct.pack(">Q", 7), "x"), 16).hex())
    print("prf(k, 'abc')", prf(k, b"abc").hex())
    print("prf(k, '')", prf(k, b"").hex())
    print("ggm_half(k, 0)", ggm_half(k, 0).hex())
    print("ggm_half(k, 1)", ggm_half(k, 1).hex())
    print("ggm(k, 0xb2, 8)", ggm(k, 0xB2, 8).hex())
    print("ggm(k, 0x0000, 16)", ggm(k, 0, 16).hex())
    print("prg('seed', 40)", prg(b"seed", 40).hex())
    print("owf('abc')", h(b"abc").hex())
    print("commit('\\x01', k)", commit(b"\x01", k).hex())
    head, last = oracle_uniform(k, b"abc")
    print("oracle uniform(k, 'abc')", head.hex(), last)
    print("seal('t', 'hello')", seal("t", b"hello").hex())
    print("envelope(6, 'hi')", envelope(6, b"hi").hex())
