"""Independent brute-force checks shared by several test modules."""


def normal_subgroups_of_order(G, size):
    """Normal subgroups of the given order, as unions of classes closed under products."""
    classes = G.conjugacy_classes[1:]
    out = []

    def grow(k, elts, total):
        if total == size:
            if G.is_subgroup(elts):
                out.append(frozenset(elts))
            return
        for j in range(k, len(classes)):
            c = classes[j]
            if total + c.size <= size:
                grow(j + 1, elts | set(c.members), total + c.size)

    grow(0, {0}, 1)
    return out


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def normal_p_complement_bruteforce(G, p):
    return bool(normal_subgroups_of_order(G, G.order // p_part(G.order, p)))
