//! Selection functions, quantifiers and their products.
//!
//! A [`SelectionFn<X, R, M>`] maps a context `X -> M<R>` to an effectful
//! element `M<X>`: given a way to judge each candidate, it picks one. A
//! [`Quantifier<X, R, M>`] maps the same kind of context to a judgement
//! `M<R>` directly. With `M = IdentityEffect` these are the classical
//! notions (argmax-like selections, `exists`/`max`-like quantifiers); other
//! effects layer nondeterminism, state or tracing underneath.
//!
//! Both types are monads in `X`, and [`SelectionFn::to_quantifier`] is a
//! monad morphism between them. Their monoidal products combine searches
//! over `X` and `Y` into a search over `(X, Y)`; iterating the product
//! ([`SelectionFn::sequence`], [`Quantifier::sequence`]) performs
//! backtracking search over tuples, which is what the SAT and game solvers
//! in this crate are built on.
//!
//! Contexts are plain function values and results are never memoised:
//! products genuinely re-query their contexts, and the [`TracedEffect`]
//! instantiation exists precisely to observe that behaviour.
//!
//! [`TracedEffect`]: crate::effect::TracedEffect

use std::sync::Arc;

use crate::effect::{Effect, Value};

/// A context: the judgement `X -> M<R>` a selection or quantifier consults.
///
/// Cheaply cloneable; cloning shares the underlying function.
pub struct Context<X: Value, R: Value, M: Effect> {
    eval: Arc<dyn Fn(X) -> M::Of<R> + Send + Sync>,
}

impl<X: Value, R: Value, M: Effect> Context<X, R, M> {
    pub fn new(f: impl Fn(X) -> M::Of<R> + Send + Sync + 'static) -> Self {
        Context { eval: Arc::new(f) }
    }

    pub fn eval(&self, x: X) -> M::Of<R> {
        (self.eval)(x)
    }
}

impl<X: Value, R: Value, M: Effect> Clone for Context<X, R, M> {
    fn clone(&self) -> Self {
        Context { eval: Arc::clone(&self.eval) }
    }
}

type SelectionRun<X, R, M> =
    Arc<dyn Fn(Context<X, R, M>) -> <M as Effect>::Of<X> + Send + Sync>;
type QuantifierRun<X, R, M> =
    Arc<dyn Fn(Context<X, R, M>) -> <M as Effect>::Of<R> + Send + Sync>;

/// A selection function over the effect `M`: `(X -> M<R>) -> M<X>`.
pub struct SelectionFn<X: Value, R: Value, M: Effect> {
    run: SelectionRun<X, R, M>,
}

impl<X: Value, R: Value, M: Effect> Clone for SelectionFn<X, R, M> {
    fn clone(&self) -> Self {
        SelectionFn { run: Arc::clone(&self.run) }
    }
}

/// A quantifier over the effect `M`: `(X -> M<R>) -> M<R>`.
pub struct Quantifier<X: Value, R: Value, M: Effect> {
    run: QuantifierRun<X, R, M>,
}

impl<X: Value, R: Value, M: Effect> Clone for Quantifier<X, R, M> {
    fn clone(&self) -> Self {
        Quantifier { run: Arc::clone(&self.run) }
    }
}

impl<X: Value, R: Value, M: Effect> SelectionFn<X, R, M> {
    pub fn new(f: impl Fn(Context<X, R, M>) -> M::Of<X> + Send + Sync + 'static) -> Self {
        SelectionFn { run: Arc::new(f) }
    }

    pub fn run(&self, ctx: Context<X, R, M>) -> M::Of<X> {
        (self.run)(ctx)
    }

    /// Run against a bare closure instead of a prebuilt [`Context`].
    pub fn run_on(&self, f: impl Fn(X) -> M::Of<R> + Send + Sync + 'static) -> M::Of<X> {
        self.run(Context::new(f))
    }

    /// The monadic unit: select `x` regardless of context, with no queries.
    pub fn unit(x: X) -> Self {
        SelectionFn::new(move |_ctx| M::unit(x.clone()))
    }

    /// The monadic bind.
    ///
    /// For the result to select under context `p`, each candidate `x` is
    /// judged by playing `f(x)` against `p` and then judging its choice;
    /// `self` selects against that derived context and `f` maps the choice
    /// through. Concretely:
    ///
    /// ```text
    /// result(p) = bind(self(h), g)   where g(x) = f(x)(p)
    ///                                      h(x) = bind(g(x), p)
    /// ```
    pub fn bind<Y: Value>(
        &self,
        f: impl Fn(X) -> SelectionFn<Y, R, M> + Send + Sync + 'static,
    ) -> SelectionFn<Y, R, M> {
        let e = self.clone();
        let f = Arc::new(f);
        SelectionFn::new(move |p: Context<Y, R, M>| {
            let g = {
                let f = Arc::clone(&f);
                let p = p.clone();
                Arc::new(move |x: X| f(x).run(p.clone())) as Arc<dyn Fn(X) -> M::Of<Y> + Send + Sync>
            };
            let h = {
                let g = Arc::clone(&g);
                let p = p.clone();
                Context::new(move |x: X| {
                    let p = p.clone();
                    M::bind(g(x), move |y: Y| p.eval(y))
                })
            };
            let g = Arc::clone(&g);
            M::bind(e.run(h), move |x: X| g(x))
        })
    }

    /// The monad morphism into quantifiers: judge whatever gets selected.
    ///
    /// `result(p) = bind(self(p), p)`; over the identity effect this is
    /// `p(self(p))`.
    pub fn to_quantifier(&self) -> Quantifier<X, R, M> {
        let e = self.clone();
        Quantifier::new(move |p: Context<X, R, M>| {
            let p2 = p.clone();
            M::bind(e.run(p), move |x: X| p2.eval(x))
        })
    }

    /// Binary monoidal product of selection functions.
    ///
    /// For a query `q` over pairs:
    ///
    /// ```text
    /// b(x) = other(q(x, .))            -- second choice, given x
    /// a    = self(|x| bind(b(x), q(x, .)))
    /// (self ⊗ other)(q) = bind(a, |x| bind(b(x), |y| unit((x, y))))
    /// ```
    ///
    /// which is the product induced by [`SelectionFn::bind`]. `b` is
    /// evaluated afresh wherever it appears, so traced instantiations show
    /// the duplicated queries this product genuinely performs.
    pub fn pair<Y: Value>(&self, other: &SelectionFn<Y, R, M>) -> SelectionFn<(X, Y), R, M> {
        let e = self.clone();
        let d = other.clone();
        SelectionFn::new(move |q: Context<(X, Y), R, M>| {
            let b = {
                let d = d.clone();
                let q = q.clone();
                Arc::new(move |x: X| {
                    let q = q.clone();
                    d.run(Context::new(move |y: Y| q.eval((x.clone(), y))))
                }) as Arc<dyn Fn(X) -> M::Of<Y> + Send + Sync>
            };
            let h = {
                let b = Arc::clone(&b);
                let q = q.clone();
                Context::new(move |x: X| {
                    let q = q.clone();
                    let x2 = x.clone();
                    M::bind(b(x), move |y: Y| q.eval((x2.clone(), y)))
                })
            };
            let a = e.run(h);
            let b = Arc::clone(&b);
            M::bind(a, move |x: X| {
                let x2 = x.clone();
                M::bind(b(x), move |y: Y| M::unit((x2.clone(), y)))
            })
        })
    }

    /// Iterated product over a homogeneous list, head outermost.
    ///
    /// Element `i` selects against a context built from elements `i+1..n`
    /// and the tail of the query; the empty product is `unit(vec![])`.
    pub fn sequence(es: Vec<SelectionFn<X, R, M>>) -> SelectionFn<Vec<X>, R, M> {
        let mut es = es;
        if es.is_empty() {
            return SelectionFn::new(move |_ctx| M::unit(Vec::new()));
        }
        let head = es.remove(0);
        let tail = SelectionFn::sequence(es);
        SelectionFn::new(move |q: Context<Vec<X>, R, M>| {
            let b = {
                let tail = tail.clone();
                let q = q.clone();
                Arc::new(move |x: X| {
                    let q = q.clone();
                    let x = x.clone();
                    tail.run(Context::new(move |ys: Vec<X>| q.eval(cons(x.clone(), ys))))
                }) as Arc<dyn Fn(X) -> M::Of<Vec<X>> + Send + Sync>
            };
            let h = {
                let b = Arc::clone(&b);
                let q = q.clone();
                Context::new(move |x: X| {
                    let q = q.clone();
                    let x2 = x.clone();
                    M::bind(b(x), move |ys: Vec<X>| q.eval(cons(x2.clone(), ys)))
                })
            };
            let a = head.run(h);
            let b = Arc::clone(&b);
            M::bind(a, move |x: X| {
                let x2 = x.clone();
                M::bind(b(x), move |ys: Vec<X>| M::unit(cons(x2.clone(), ys)))
            })
        })
    }
}

impl<X: Value, R: Value, M: Effect> Quantifier<X, R, M> {
    pub fn new(f: impl Fn(Context<X, R, M>) -> M::Of<R> + Send + Sync + 'static) -> Self {
        Quantifier { run: Arc::new(f) }
    }

    pub fn run(&self, ctx: Context<X, R, M>) -> M::Of<R> {
        (self.run)(ctx)
    }

    pub fn run_on(&self, f: impl Fn(X) -> M::Of<R> + Send + Sync + 'static) -> M::Of<R> {
        self.run(Context::new(f))
    }

    /// The monadic unit: judge `x` under whatever context arrives.
    pub fn unit(x: X) -> Self {
        Quantifier::new(move |p: Context<X, R, M>| p.eval(x.clone()))
    }

    /// The monadic bind, continuation-style: no underlying effect is
    /// consulted, contexts simply nest.
    pub fn bind<Y: Value>(
        &self,
        f: impl Fn(X) -> Quantifier<Y, R, M> + Send + Sync + 'static,
    ) -> Quantifier<Y, R, M> {
        let m = self.clone();
        let f = Arc::new(f);
        Quantifier::new(move |p: Context<Y, R, M>| {
            let f = Arc::clone(&f);
            let p = p.clone();
            m.run(Context::new(move |x: X| f(x).run(p.clone())))
        })
    }

    /// Binary product: `(φ ⊗ ψ)(q) = φ(|x| ψ(|y| q(x, y)))`.
    pub fn pair<Y: Value>(&self, other: &Quantifier<Y, R, M>) -> Quantifier<(X, Y), R, M> {
        let f = self.clone();
        let g = other.clone();
        Quantifier::new(move |q: Context<(X, Y), R, M>| {
            let g = g.clone();
            let q = q.clone();
            f.run(Context::new(move |x: X| {
                let q = q.clone();
                let x = x.clone();
                g.run(Context::new(move |y: Y| q.eval((x.clone(), y))))
            }))
        })
    }

    /// Iterated product over a homogeneous list, head outermost; the empty
    /// product queries the context on the empty tuple.
    pub fn sequence(fs: Vec<Quantifier<X, R, M>>) -> Quantifier<Vec<X>, R, M> {
        let mut fs = fs;
        if fs.is_empty() {
            return Quantifier::new(move |q: Context<Vec<X>, R, M>| q.eval(Vec::new()));
        }
        let head = fs.remove(0);
        let tail = Quantifier::sequence(fs);
        Quantifier::new(move |q: Context<Vec<X>, R, M>| {
            let tail = tail.clone();
            let q = q.clone();
            head.run(Context::new(move |x: X| {
                let q = q.clone();
                let x = x.clone();
                tail.run(Context::new(move |ys: Vec<X>| q.eval(cons(x.clone(), ys))))
            }))
        })
    }
}

fn cons<T>(x: T, mut xs: Vec<T>) -> Vec<T> {
    xs.insert(0, x);
    xs
}

/// Search over `n` booleans with the selection that, for each bit, answers
/// with the context's judgement of `true`: if assigning `true` can succeed
/// it is chosen, otherwise `false` is.
///
/// Running the result against a predicate-like context finds a bit sequence
/// the predicate accepts whenever one exists.
///
/// ```
/// use selsearch::effect::IdentityEffect;
/// use selsearch::select::bounded_binary_search;
///
/// let search = bounded_binary_search::<IdentityEffect>(3);
/// let found = search.run_on(|xs: Vec<bool>| xs[0] && !xs[1] && xs[2]);
/// assert_eq!(found, vec![true, false, true]);
/// ```
pub fn bounded_binary_search<M: Effect>(n: usize) -> SelectionFn<Vec<bool>, bool, M> {
    let bit = (0..n)
        .map(|_| SelectionFn::<bool, bool, M>::new(|p: Context<bool, bool, M>| p.eval(true)))
        .collect();
    SelectionFn::sequence(bit)
}
