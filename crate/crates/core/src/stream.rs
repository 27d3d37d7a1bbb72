//! Lazy search streams with mature (`Yield`) and immature (`Await`) steps.

use std::fmt;
use std::sync::Arc;

/// A deferred stream, forced at most once.
pub struct Lazy<T>(Box<dyn FnOnce() -> Stream<T> + Send>);

impl<T> Lazy<T> {
    pub fn new(thunk: impl FnOnce() -> Stream<T> + Send + 'static) -> Self {
        Lazy(Box::new(thunk))
    }

    pub fn force(self) -> Stream<T> {
        (self.0)()
    }
}

impl<T: Send + 'static> Lazy<T> {
    pub fn ready(stream: Stream<T>) -> Self {
        Lazy::new(move || stream)
    }
}

pub enum Stream<T> {
    Done,
    Yield(T, Lazy<T>),
    Await(Lazy<T>),
}

impl<T> fmt::Debug for Stream<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stream::Done => f.write_str("Done"),
            Stream::Yield(..) => f.write_str("Yield(..)"),
            Stream::Await(_) => f.write_str("Await(..)"),
        }
    }
}

impl<T: Send + 'static> Stream<T> {
    pub fn single(item: T) -> Self {
        Stream::Yield(item, Lazy::new(|| Stream::Done))
    }

    pub fn delay(thunk: impl FnOnce() -> Stream<T> + Send + 'static) -> Self {
        Stream::Await(Lazy::new(thunk))
    }

    /// A finite stream of the given items, with no immature steps.
    pub fn from_vec(items: Vec<T>) -> Self {
        let mut stream = Stream::Done;
        for item in items.into_iter().rev() {
            stream = Stream::Yield(item, Lazy::ready(stream));
        }
        stream
    }

    /// Performs one step: returns the head (if this step is mature) and
    /// the rest of the stream, or `None` when done.
    pub fn step(self) -> Option<(Option<T>, Stream<T>)> {
        match self {
            Stream::Done => None,
            Stream::Yield(item, rest) => Some((Some(item), Stream::Await(rest))),
            Stream::Await(rest) => Some((None, rest.force())),
        }
    }

    pub fn take(self, n: usize) -> Vec<T> {
        take_n(n, self)
    }
}

impl<T: Send + 'static> IntoIterator for Stream<T> {
    type Item = T;
    type IntoIter = StreamIter<T>;

    fn into_iter(self) -> StreamIter<T> {
        StreamIter {
            stream: Some(self),
            steps: 0,
        }
    }
}

/// Fair disjunction: swaps the two streams on every step.
pub fn interleave<T: Send + 'static>(first: Stream<T>, second: Stream<T>) -> Stream<T> {
    interleave_lazy(first, Lazy::ready(second))
}

/// [`interleave`] with a second stream that is only forced once the first
/// one has produced a step.
pub fn interleave_lazy<T: Send + 'static>(first: Stream<T>, second: Lazy<T>) -> Stream<T> {
    match first {
        Stream::Done => second.force(),
        Stream::Yield(item, rest) => Stream::Yield(item, Lazy::new(move || interleave_lazy(second.force(), rest))),
        Stream::Await(rest) => Stream::Await(Lazy::new(move || interleave_lazy(second.force(), rest))),
    }
}

pub type Continuation<A, B> = Arc<dyn Fn(A) -> Stream<B> + Send + Sync>;

/// Monadic bind: every element is fed to `next` and the resulting streams
/// are interleaved with the rest of the search.
pub fn bind<A, B>(stream: Stream<A>, next: Continuation<A, B>) -> Stream<B>
where
    A: Send + 'static,
    B: Send + 'static,
{
    match stream {
        Stream::Done => Stream::Done,
        Stream::Yield(item, rest) => {
            let head = next(item);
            interleave_lazy(head, Lazy::new(move || bind(rest.force(), next)))
        }
        Stream::Await(rest) => Stream::Await(Lazy::new(move || bind(rest.force(), next))),
    }
}

pub fn map<A, B>(stream: Stream<A>, f: Arc<dyn Fn(A) -> B + Send + Sync>) -> Stream<B>
where
    A: Send + 'static,
    B: Send + 'static,
{
    match stream {
        Stream::Done => Stream::Done,
        Stream::Yield(item, rest) => {
            let head = f(item);
            Stream::Yield(head, Lazy::new(move || map(rest.force(), f)))
        }
        Stream::Await(rest) => Stream::Await(Lazy::new(move || map(rest.force(), f))),
    }
}

/// Forces `stream` until `n` elements are collected or it ends. Diverges on
/// an infinite stream that stops producing elements.
pub fn take_n<T: Send + 'static>(n: usize, stream: Stream<T>) -> Vec<T> {
    stream.into_iter().take(n).collect()
}

/// Iterator over the mature elements of a stream.
pub struct StreamIter<T> {
    stream: Option<Stream<T>>,
    steps: u64,
}

impl<T: Send + 'static> StreamIter<T> {
    /// Number of stream steps forced so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Like `next`, but gives up once the total number of forced steps
    /// exceeds `limit`.
    pub fn next_within(&mut self, limit: u64) -> Result<Option<T>, StepLimitReached> {
        loop {
            if self.steps >= limit {
                return Err(StepLimitReached { steps: self.steps });
            }
            let Some(stream) = self.stream.take() else {
                return Ok(None);
            };
            self.steps += 1;
            match stream {
                Stream::Done => return Ok(None),
                Stream::Yield(item, rest) => {
                    self.stream = Some(Stream::Await(rest));
                    return Ok(Some(item));
                }
                Stream::Await(rest) => self.stream = Some(rest.force()),
            }
        }
    }
}

impl<T: Send + 'static> Iterator for StreamIter<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        self.next_within(u64::MAX).unwrap_or(None)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("search gave up after {steps} steps")]
pub struct StepLimitReached {
    pub steps: u64,
}
