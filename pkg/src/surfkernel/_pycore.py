"""Pure-Python word kernels.

Letters are nonzero ints: generator ``g`` (0-based) is the letter ``g + 1``
and its inverse is ``-(g + 1)``.  Every function here has a drop-in twin
in the compiled ``_ccore`` module; ``surfkernel.core`` picks one at import.
"""


def free_reduce(letters):
    stack = []
    push = stack.append
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            push(x)
    return tuple(stack)


def cyclic_reduce(letters):
    w = free_reduce(letters)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def inverse(letters):
    return tuple(-x for x in reversed(letters))


def substitute(letters, images):
    """Replace generators by words and freely reduce.

    ``images`` maps a generator id to the tuple of letters it is replaced by;
    generators absent from the mapping are kept.
    """
    stack = []
    for x in letters:
        g = x - 1 if x > 0 else -x - 1
        rep = images.get(g)
        if rep is None:
            seq = (x,)
        elif x > 0:
            seq = rep
        else:
            seq = [-y for y in reversed(rep)]
        for y in seq:
            if stack and stack[-1] == -y:
                stack.pop()
            else:
                stack.append(y)
    return tuple(stack)


def evaluate(letters, images, table, inverse_of):
    """Multiply out the images of ``letters`` in a group given by its table."""
    g = 0
    for x in letters:
        if x > 0:
            g = table[g][images[x - 1]]
        else:
            g = table[g][inverse_of[images[-x - 1]]]
    return int(g)


def rewrite(letters, images, table, inverse_of, nsym, start=0):
    """Reidemeister-Schreier rewriting of a word in the base generators.

    Letter ``v^+1`` read at coset ``K`` becomes the kernel generator
    ``K * nsym + v``; letter ``v^-1`` becomes the inverse of the generator
    at coset ``K * phi(v)^-1``.  Returns ``(kernel_letters, end_coset)``.
    """
    out = []
    c = start
    for x in letters:
        if x > 0:
            v = x - 1
            y = c * nsym + v + 1
            c = table[c][images[v]]
        else:
            v = -x - 1
            c = table[c][inverse_of[images[v]]]
            y = -(c * nsym + v + 1)
        if out and out[-1] == -y:
            out.pop()
        else:
            out.append(y)
    return tuple(out), int(c)


def abelianize(letters, size):
    counts = [0] * size
    for x in letters:
        if x > 0:
            counts[x - 1] += 1
        else:
            counts[-x - 1] -= 1
    return counts


def singletons(letters):
    """Generator ids occurring exactly once (either sign), ascending."""
    seen = {}
    for x in letters:
        g = x - 1 if x > 0 else -x - 1
        seen[g] = seen.get(g, 0) + 1
    return tuple(sorted(g for g, c in seen.items() if c == 1))
